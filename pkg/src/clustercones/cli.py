"""Command-line entry point: verification suites and deterministic JSON emitters."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import cluster, cones, gvec, networks, quiver, tropic, words

SUITES = ("quiver", "minors", "gvectors", "thetas", "cones", "dims", "all")
OBJECTS = ("quiver", "seed-trace", "potential", "ineq", "rays", "points")

TABLE_31 = (
    (0, -1, 3, 1, 0), (0, 0, 2, 0, 1), (0, 0, 2, 1, 0), (0, 1, 1, 0, 1), (0, 1, 1, 1, 0),
    (0, 2, 0, 0, 1), (0, 2, 0, 1, 0), (1, -1, 2, 1, 0), (1, 0, 1, 0, 1), (1, 0, 1, 1, 0),
    (1, 1, 0, 0, 1), (1, 1, 0, 1, 0), (2, -1, 1, 1, 0), (2, 0, 0, 0, 1), (2, 0, 0, 1, 0),
)


@dataclass
class RunConfig:
    command: str
    n: int
    options: dict = field(default_factory=dict)
    seed_for_rng: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= 6:
            raise ValueError(f"n = {self.n} is outside the supported range 1..6")
        self.seed_for_rng = int(self.seed_for_rng) & 0xFFFFFFFFFFFFFFFF


def thread_count() -> int:
    raw = os.environ.get("CLUSTERCONES_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return min(4, os.cpu_count() or 1)


def dump(obj, cfg: RunConfig | None = None) -> str:
    if cfg is not None and isinstance(obj, dict):
        obj = {**obj, "rng_seed": cfg.seed_for_rng}
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# checks: each returns (passed, detail)

def _check(claim: str, fn):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported, never raised
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return {"claim": claim, "passed": bool(ok), "detail": detail,
            "_seconds": round(time.perf_counter() - t0, 3)}


def _quiver_checks(n, seed):
    out = []
    out.append(("lexicographic sweep deletes the bottom row of Q_n", lambda: (
        quiver.apply_plan(quiver.triangle_quiver(n), quiver.lex_sweep(n)).same_as(
            quiver.delete_bottom_row(quiver.triangle_quiver(n), n)), "")))
    out.append(("nested sweep reverses every arrow of Q_n", lambda: (
        quiver.apply_plan(quiver.triangle_quiver(n), quiver.nested_sweep(n)).same_as(
            quiver.reversed_quiver(quiver.triangle_quiver(n))), "")))
    if n >= 3:
        def reversal():
            q = quiver.build_U_quiver(n)
            return quiver.apply_plan(q, quiver.reflection_plan(n)).same_as(quiver.reversed_quiver(q)), ""
        out.append(("reflection plan reverses the U quiver", reversal))

        def sinks():
            q = quiver.apply_plan(quiver.build_Gew0_quiver(n), quiver.reflection_plan(n))
            got = sorted(v for v in q.frozen if quiver.is_sink(q, v))
            return {(1, n), (n - 1, n - 1)} <= set(got), f"sinks {got}"
        out.append(("seed s is optimized for two frozen vertices", sinks))
    else:
        out.append(("reflection plan reverses the U quiver", lambda: (True, "no unfrozen vertices for n = 2")))
    if n >= 2:
        def lex_word():
            q = words.bfz_quiver(words.lex_min_word(n)).relabel(words.lex_label)
            return q.same_as(quiver.build_Gew0_quiver(n)), ""
        out.append(("lex-min word quiver equals the initial G^{e,w0} quiver", lex_word))

        def involution():
            for q in (quiver.build_Gew0_quiver(n, True), quiver.build_U_quiver(n)):
                for v in q.unfrozen():
                    if not quiver.mutate_quiver(quiver.mutate_quiver(q, v), v).same_as(q):
                        return False, f"mutation at {v} is not an involution"
            return True, ""
        out.append(("mutation is an involution", involution))
    return out


def _minor_checks(n, seed):
    out = []
    if n >= 3:
        for space in ("GmodU", "U"):
            def reflect(space=space):
                recs = cluster.run_reflection(n, space, points=20, seed=seed)
                bad = [r.step for r in recs if not (r.verified and r.laurent and r.pattern_ok)]
                return not bad, f"{len(recs)} steps, failing {bad}"
            out.append((f"reflection plan variables equal the predicted minors ({space})", reflect))
        out.append(("reflection endpoint on U gives reflected minors",
                    lambda: (cluster.reflection_endpoint_check(n, seed=seed), "")))
    if n >= 2:
        out.append(("three-term minor identity for all column triples",
                    lambda: (cluster.all_minor_identities(n), "")))

        def plans():
            bad = []
            for J in gvec.all_minor_sets(n):
                ok, laurent = cluster.minor_plan_check(n, J, seed=seed)
                if not (ok and laurent):
                    bad.append(list(J))
            return not bad, f"failing {bad}"
        out.append(("minor plans reach every top-aligned minor with Laurent variables", plans))

        def whitney():
            bad = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)
                   if not networks.whitney_check(n, i, j)]
            return not bad, f"failing {bad}"
        out.append(("path minors equal the Whitney monomials", whitney))
    if n == 4:
        def values():
            net = networks.network_from_word(words.lex_min_word(4))
            got = {f"{r},{c}": str(networks.minor_via_paths(net, [r], [c])) for r, c in ((1, 3), (3, 3), (4, 3))}
            want = {"1,3": "t[1]*t[2] + t[1]*t[5] + t[3]*t[5]", "3,3": "1", "4,3": "0"}
            return got == want, got
        out.append(("planar network matrix entries for n = 4", values))
    return out


def _gvector_checks(n, seed):
    out = []
    if n >= 3:
        def closed_U():
            table, _ = gvec.run_inverse_reflection(n, "U")
            bad = [k for k, g in sorted(table.items()) if g != gvec.closed_form_U(n, *k)]
            return not bad, f"{len(table)} variables, failing {bad}"
        out.append(("principal-coefficient g-vectors match the closed form on U", closed_U))

        def closed_G():
            table, _ = gvec.run_inverse_reflection(n, "GmodU")
            bad = sorted(k for k, g in table.items()
                         if k[0] < k[1] and g != gvec.closed_form(n, *k, space="GmodU"))
            endpoints = [(i, j, n - j) for i in range(1, n) for j in range(i + 1, n + 1)]
            return bad == endpoints, f"literal closed form differs at {bad}"
        out.append(("G^{e,w0} g-vectors: the literal closed form differs exactly at k = n - j", closed_G))
        out.append(("arrows to the w-vertices follow the predicted pattern",
                    lambda: (gvec.vwarrows_check(n, "GmodU") and gvec.vwarrows_check(n, "U"), "")))

        def entries():
            table, _ = gvec.run_inverse_reflection(n, "U")
            bad = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)
                   if gvec.matrix_entry_gvector_computed(n, i, j, table) != gvec.matrix_entry_gvector(n, i, j)]
            return not bad, f"failing {bad}"
        out.append(("matrix-entry g-vectors", entries))

    def edges():
        bad = [list(J) for J in gvec.all_minor_sets(n) if not gvec.psi_check(n, J)]
        return not bad, f"failing {bad}"
    out.append(("psi of the GT pattern equals the minor g-vector", edges))

    def computed():
        bad = []
        for J in gvec.all_minor_sets(n):
            run = gvec.gvector_minor_computed(n, J)
            if run.gvector != gvec.gvector_minor(n, J) or not run.orientation_ok:
                bad.append(list(J))
        return not bad, f"failing {bad}"
    out.append(("minor g-vectors computed along minor plans", computed))
    out.append(("psi is unimodular", lambda: (abs(gvec.psi_det(n)) == 1, f"det {gvec.psi_det(n)}")))
    return out


def _theta_checks(n, seed):
    out = []

    def paths():
        bad = []
        for L in range(1, 9):
            q = tropic.path_quiver(L)
            if tropic.theta_at_seed((0, 0), q).poly != tropic.path_theta_closed_form(L):
                bad.append(L)
        return not bad, f"failing lengths {bad}"
    out.append(("path quiver theta functions", paths))
    if n >= 3:
        out.append(("potential on U equals its closed form", lambda: (
            tropic.potential_U(n).poly == tropic.potential_closed_form(n, "U"), "")))
    if n >= 2:
        for nn in (False, True):
            out.append((f"potential on G/U equals its closed form (with e_nn: {nn})", lambda nn=nn: (
                tropic.potential_GmodU(n, nn).poly == tropic.potential_closed_form(n, "GmodU", nn), "")))

        def counts():
            rows = len(tropic.tropicalize(tropic.potential_GmodU(n, True)).rows)
            return rows == n * (n - 1) + 1, f"{rows} rows"
        out.append(("inequality count n(n-1)+1", counts))

        def positive():
            ths = tropic.potential_GmodU(n, True).summands
            if n >= 3:
                ths = ths + tropic.potential_U(n).summands
            return all(t.coefficients_all_one() and t.pure_term_once() for t in ths), ""
        out.append(("theta coefficients are all 1 and the pure term appears once", positive))
    return out


def _cone_checks(n, seed):
    out = []
    if n >= 2:
        def xi_gt():
            K, Xt = cones.gt_cone(n), cones.xi_cone(n, "GmodU", True)
            eq = cones.cone_equal(K, Xt, gvec.psi_matrix(n))
            match = cones.inequality_matching(K, Xt, gvec.psi_matrix(n))
            return eq and match, f"rays {len(cones.rays(Xt))}, rows {len(Xt.rows)}"
        out.append(("psi(K_n) equals Xi-tilde", xi_gt))

        def xi_false():
            emb = cones.embed(cones.xi_cone(n, "GmodU"), gvec.all_coords(n))
            return not cones.cone_equal(cones.psi_image_of_gt(n), emb), ""
        out.append(("psi(K_n) differs from Xi (x_nn pinned to 0)", xi_false))

        def ray_minors():
            got = cones.rays(cones.xi_cone(n, "GmodU", True))
            want = cones.RaySet.of(gvec.gvector_minor(n, J).vector(gvec.all_coords(n))
                                   for J in gvec.all_minor_sets(n))
            return got == want, f"{len(got)} rays"
        out.append(("rays of Xi-tilde are the minor g-vectors", ray_minors))
    if n >= 3:
        def simplicial():
            rep = cones.simplicial_check(cones.xi_cone(n, "U"), cones.xi_U_expected_rays(n))
            return rep.ok, rep.to_json()
        out.append(("Xi for U is simplicial on the matrix-entry g-vectors", simplicial))
    return out


def _dims_checks(n, seed):
    out = []
    if n == 3:
        def table():
            pts = cones.lattice_points(cones.weight_slice(3, (3, 1)))
            return tuple(pts) == TABLE_31, f"{len(pts)} points"
        out.append(("weight (3,1) slice reproduces the 15-point table", table))
    if n >= 2:
        top = {2: 8, 3: 6, 4: 4, 5: 2}.get(n, 1)

        def sweep():
            bad = []
            lams = cones.dominant_weights(n, top)
            for lam in lams:
                c = len(cones.lattice_points(cones.weight_slice(n, lam)))
                if c != cones.weyl_dim(n, lam):
                    bad.append([list(lam), c])
            return not bad, f"{len(lams)} weights with lambda_1 <= {top}, failing {bad}"
        out.append(("slice lattice-point counts equal the Weyl dimension", sweep))
    return out


SUITE_CHECKS = {"quiver": _quiver_checks, "minors": _minor_checks, "gvectors": _gvector_checks,
                "thetas": _theta_checks, "cones": _cone_checks, "dims": _dims_checks}


def cmd_verify(cfg: RunConfig, timings: bool = False) -> tuple[int, dict]:
    suite = cfg.options.get("suite", "all")
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    jobs = []
    for name in names:
        for claim, fn in SUITE_CHECKS[name](cfg.n, cfg.seed_for_rng):
            jobs.append((name, claim, fn))
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        futures = [pool.submit(_check, claim, fn) for _, claim, fn in jobs]
        results = [f.result() for f in futures]
    checks = []
    for (name, _, _), res in zip(jobs, results):
        rec = {"suite": name, **{k: v for k, v in res.items() if k != "_seconds"}}
        if timings:
            rec["seconds"] = res["_seconds"]
        checks.append(rec)
    passed = all(c["passed"] for c in checks)
    report = {"command": "verify", "suite": suite, "n": cfg.n,
              "passed": passed, "checks": checks}
    return (0 if passed else 1), report


# emitters

def potential_json(p: tropic.Potential) -> dict:
    return {"seed": p.seed_tag, "order": [list(v) for v in p.order],
            "summands": [{"frozen": list(t.frozen_index), "terms": t.poly.to_json()} for t in p.summands]}


def _potential(cfg):
    space = cfg.options.get("space", "GmodU")
    nn = bool(cfg.options.get("with_nn"))
    return tropic.potential_U(cfg.n) if space == "U" else tropic.potential_GmodU(cfg.n, nn)


def _cone(cfg):
    space = cfg.options.get("space", "GmodU")
    return cones.xi_cone(cfg.n, space, bool(cfg.options.get("with_nn")))


def _weight(cfg) -> cones.Weight:
    text = cfg.options.get("lambda")
    if text is None:
        raise ValueError("--lambda is required")
    return cones.Weight.parse(text)


def seed_trace(cfg) -> dict:
    space = cfg.options.get("space", "GmodU")
    recs = cluster.run_reflection(cfg.n, space, points=int(cfg.options.get("points", 20)),
                                  seed=cfg.seed_for_rng)
    return {"n": cfg.n, "space": space,
            "steps": [r.to_json() for r in recs],
            "verified": all(r.verified for r in recs), "laurent": all(r.laurent for r in recs)}


def points_json(cfg) -> dict:
    w = _weight(cfg)
    s = cones.weight_slice(cfg.n, w)
    pts = cones.lattice_points(s)
    return {"n": cfg.n, "lambda": list(w.lam), "order": [list(v) for v in s.cone.order],
            "count": len(pts), "points": [list(p) for p in pts], "weyl": cones.weyl_dim(cfg.n, w),
            "match": len(pts) == cones.weyl_dim(cfg.n, w)}


def cmd_emit(cfg: RunConfig) -> dict[str, str]:
    """Return filename -> contents for the requested object."""
    obj, fmt = cfg.options["object"], cfg.options.get("format", "json")
    space = cfg.options.get("space", "GmodU")
    stem = f"{obj}_{space}_n{cfg.n}"
    if obj == "quiver":
        word = words.DoubleWord.parse(cfg.n, cfg.options["word"]) if "word" in cfg.options else None
        if word is not None:
            stem = f"quiver_word_n{cfg.n}"
            q = words.bfz_quiver(word)
        elif space == "U":
            q = quiver.build_U_quiver(cfg.n)
        else:
            q = quiver.build_Gew0_quiver(cfg.n, bool(cfg.options.get("with_nn")))
        if fmt == "dot":
            return {stem + ".dot": q.sorted().to_dot()}
        if fmt == "svg":
            arr = words.build_arrangement(word or words.lex_min_word(cfg.n))
            return {stem + ".svg": words.arrangement_svg(arr)}
        data = q.sorted().to_json()
        if word is not None:
            arr = words.build_arrangement(word)
            data["chambers"] = [{"rows": list(c.rows), "cols": list(c.cols), "unbounded": c.unbounded}
                                for c in arr.chambers]
        return {stem + ".json": dump(data, cfg)}
    if obj == "seed-trace":
        return {stem + ".json": dump(seed_trace(cfg), cfg)}
    if obj == "potential":
        return {stem + ".json": dump(potential_json(_potential(cfg)), cfg)}
    if obj == "ineq":
        return {stem + ".json": dump(tropic.tropicalize(_potential(cfg)).to_json(), cfg)}
    if obj == "rays":
        c = _cone(cfg)
        return {stem + ".json": dump({"name": c.name, "order": [list(v) for v in c.order],
                                      "rays": cones.rays(c).to_json()}, cfg)}
    if obj == "points":
        return {f"points_n{cfg.n}_{cfg.options['lambda'].replace(',', '_')}.json": dump(points_json(cfg), cfg)}
    raise ValueError(f"unknown object {obj!r}")


def cone_by_name(name: str, n: int) -> tuple[cones.Cone, object]:
    """The cone and the basis change applied to it before comparison."""
    if name == "gt":
        return cones.gt_cone(n), gvec.psi_matrix(n)
    if name == "xi-tilde":
        return cones.xi_cone(n, "GmodU", True), None
    if name == "xi":
        return cones.embed(cones.xi_cone(n, "GmodU"), gvec.all_coords(n)), None
    if name == "xi-u":
        return cones.xi_cone(n, "U"), None
    raise ValueError(f"unknown cone {name!r}")


def _write(files: dict[str, str], out: str | None) -> None:
    if out is None:
        for text in files.values():
            sys.stdout.write(text)
        return
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (d / name).write_text(text)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clustercones")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_default=4):
        sp.add_argument("--n", type=int, default=n_default)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None)

    v = sub.add_parser("verify")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--timings", action="store_true")
    common(v)

    e = sub.add_parser("emit")
    e.add_argument("object", choices=OBJECTS)
    e.add_argument("--space", choices=("U", "GmodU"), default="GmodU")
    e.add_argument("--with-nn", action="store_true")
    e.add_argument("--lambda", dest="lam", default=None)
    e.add_argument("--format", choices=("json", "dot", "svg"), default="json")
    e.add_argument("--word", default=None, help='reduced word such as "1,2,1" or "B1 R1 B2 B1"')
    common(e)

    s = sub.add_parser("seed")
    s.add_argument("action", choices=("run",))
    s.add_argument("--space", choices=("U", "GmodU"), default="GmodU")
    s.add_argument("--plan", choices=("reflection",), default="reflection")
    s.add_argument("--emit-vars", default=None, metavar="FILE")
    common(s)

    g = sub.add_parser("gvec")
    g.add_argument("action", choices=("minor",))
    g.add_argument("--cols", required=True)
    common(g)

    pt = sub.add_parser("potential")
    pt.add_argument("--space", choices=("U", "GmodU"), default="GmodU")
    pt.add_argument("--with-nn", action="store_true")
    pt.add_argument("--emit", nargs="*", default=None, metavar="FILE")
    common(pt)

    d = sub.add_parser("dim")
    d.add_argument("--lambda", dest="lam", required=True)
    common(d, 3)

    c = sub.add_parser("cone")
    c.add_argument("action", choices=("compare",))
    c.add_argument("--a", default="gt", choices=("gt", "xi-tilde", "xi", "xi-u"))
    c.add_argument("--b", default="xi-tilde", choices=("gt", "xi-tilde", "xi", "xi-u"))
    common(c)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    opts = {k: v for k, v in vars(args).items() if k not in ("command", "n", "seed") and v is not None}
    if "lam" in opts:
        opts["lambda"] = opts.pop("lam")
    try:
        cfg = RunConfig(args.command, args.n, opts, args.seed)
        if args.command == "verify":
            cfg.options["suite"] = args.suite
            status, report = cmd_verify(cfg, args.timings)
            _write({f"verify_{args.suite}_n{cfg.n}.json": dump(report, cfg)}, args.out)
            return status
        if args.command == "emit":
            _write(cmd_emit(cfg), args.out)
            return 0
        if args.command == "seed":
            trace = dump(seed_trace(cfg), cfg)
            if args.emit_vars:
                Path(args.emit_vars).write_text(trace)
            else:
                _write({f"seed_{args.space}_n{cfg.n}.json": trace}, args.out)
            return 0
        if args.command == "gvec":
            J = tuple(int(x) for x in args.cols.split(","))
            run = gvec.gvector_minor_computed(cfg.n, J)
            closed = gvec.gvector_minor(cfg.n, J)
            res = {"n": cfg.n, "cols": list(run.J), "vertex": list(run.vertex),
                   "gvector": run.gvector.to_json(), "closed_form": closed.to_json(),
                   "match": run.gvector == closed, "orientation_ok": run.orientation_ok,
                   "gt_pattern": [[k, l, v] for (k, l), v in sorted(gvec.gt_pattern(cfg.n, J).as_dict().items())],
                   "psi_check": gvec.psi_check(cfg.n, J)}
            _write({f"gvec_n{cfg.n}.json": dump(res, cfg)}, args.out)
            return 0 if res["match"] else 1
        if args.command == "potential":
            p = _potential(cfg)
            files = [dump(potential_json(p), cfg), dump(tropic.tropicalize(p).to_json(), cfg)]
            if args.emit:
                for name, text in zip(args.emit, files):
                    Path(name).write_text(text)
            else:
                _write({"w.json": files[0], "ineq.json": files[1]}, args.out)
            return 0
        if args.command == "dim":
            res = points_json(cfg)
            _write({f"dim_n{cfg.n}.json": dump(res, cfg)}, args.out)
            return 0 if res["match"] else 1
        if args.command == "cone":
            a, ma = cone_by_name(args.a, cfg.n)
            b, mb = cone_by_name(args.b, cfg.n)
            if mb is not None:
                b = cones.transform_cone(b, mb)
            equal = cones.cone_equal(a, b, ma)
            res = {"n": cfg.n, "a": args.a, "b": args.b, "equal": equal,
                   "rays_a": len(cones.rays(a)), "rays_b": len(cones.rays(b))}
            _write({f"cone_{args.a}_{args.b}_n{cfg.n}.json": dump(res, cfg)}, args.out)
            return 0
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"clustercones: error: {exc}\n")
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
