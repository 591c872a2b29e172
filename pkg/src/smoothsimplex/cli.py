"""Command-line verification harness.

Every subcommand runs a fixed battery of checks at the requested
dimensions and emits a machine-readable report; the exit status is 0
exactly when all checks pass.  Reports are byte-identical across runs for
identical flags and seed (wall-clock timing is only filled in on request,
since it would break that reproducibility).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import engine, homotopy, probe, realization
from .geometry import (
    Bary,
    barycentric_grid,
    chart_decompose,
    phi_chart,
    transition_identity_gap,
)
from .simplicial import (
    EMPTY,
    FiniteSimplicialSet,
    SimplicialMap,
    boundary_complex,
    horn_complex,
    standard_simplicial_set,
)

DEFAULT_TOL = 1e-9
DEFAULT_DERIV_TOL = 1e-6
DEFAULT_GRID = 20
DEFAULT_SEED = 0


@dataclass
class Report:
    command: str
    parameters: dict
    seed: Optional[int] = None
    checks: list[dict] = field(default_factory=list)
    timing_s: Optional[float] = None

    def add(self, name: str, passed: bool, max_violation=None, witness=None,
            skipped: bool = False) -> None:
        self.checks.append({
            "name": name,
            "status": "skipped" if skipped else ("pass" if passed else "fail"),
            "max_violation": max_violation,
            "witness": witness,
        })

    @property
    def ok(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def to_json_dict(self) -> dict:
        return {"command": self.command, "parameters": self.parameters,
                "seed": self.seed, "checks": self.checks,
                "timing_s": self.timing_s}

    def render_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key, val in sorted(self.parameters.items()):
            lines.append(f"  {key} = {val}")
        for c in self.checks:
            mark = {"pass": "ok  ", "fail": "FAIL", "skipped": "skip"}[c["status"]]
            extra = ""
            if c["max_violation"] is not None:
                extra = f"  max violation {c['max_violation']:.3e}"
            lines.append(f"[{mark}] {c['name']}{extra}")
            if c["status"] == "fail" and c["witness"] is not None:
                lines.append(f"       witness: {json.dumps(c['witness'], sort_keys=True)}")
        lines.append("result: " + ("all checks passed" if self.ok else "FAILURES"))
        return "\n".join(lines)


# -- named inputs -------------------------------------------------------------


def named_complex(name: str) -> FiniteSimplicialSet:
    if name.startswith("delta"):
        return standard_simplicial_set(int(name[5:]))
    if name.startswith("boundary"):
        return boundary_complex(int(name[8:]))[0]
    if name.startswith("horn"):
        p, k = name[4:].split("_")
        return horn_complex(int(p), int(k))[0]
    if name == "empty":
        return FiniteSimplicialSet("empty")
    raise ValueError(f"unknown complex name {name!r}")


def _collapse_to_point(X: FiniteSimplicialSet) -> SimplicialMap:
    pt = standard_simplicial_set(0)
    return SimplicialMap(X, pt, {
        r.id: (tuple(range(r.dim - 1, -1, -1)), pt.ref(0))
        for r in X.nondegenerate()}, name=f"{X.name}->pt")


def load_map_file(path: str) -> SimplicialMap:
    """A simplicial map from a JSON file: ``{"source": <complex>,
    "target": <complex>, "assignment": {...}}`` in the library formats."""
    with open(path) as fh:
        data = json.load(fh)
    source = FiniteSimplicialSet.from_json_dict(data["source"], "source")
    target = FiniteSimplicialSet.from_json_dict(data["target"], "target")
    return SimplicialMap.from_json_dict(data, source, target)


def named_map(name: str) -> SimplicialMap:
    if name == "delta1_to_delta0":
        return _collapse_to_point(standard_simplicial_set(1))
    if name == "boundary1_to_delta0":
        return _collapse_to_point(boundary_complex(1)[0])
    if name == "delta0_identity":
        return SimplicialMap.identity(standard_simplicial_set(0))
    if name == "empty_to_delta0":
        return SimplicialMap(FiniteSimplicialSet("empty"),
                             standard_simplicial_set(0), {}, name="∅->pt")
    if name.startswith("horn") and name.endswith("_incl"):
        p, k = name[4:-5].split("_")
        return horn_complex(int(p), int(k))[1]
    if name.startswith("collapse_"):
        return _collapse_to_point(named_complex(name[len("collapse_"):]))
    raise ValueError(f"unknown map name {name!r}")


# -- command implementations ---------------------------------------------------


def run_axiom1(args) -> Report:
    rep = Report("verify-axiom1", {"p": args.p, "grid": args.grid})
    for p in ([args.p] if args.p else [1, 2, 3]):
        grid = barycentric_grid(p, args.grid)
        uncovered = []
        for z in grid:
            hits = 0
            for i in range(p + 1):
                if z[i] > 0:
                    dec = chart_decompose(z, i)
                    if phi_chart(i, dec.x, dec.t).coords == z.coords:
                        hits += 1
            if hits == 0:
                uncovered.append([float(c) for c in z.coords])
        rep.add(f"chart-covering-p{p}", not uncovered,
                max_violation=float(len(uncovered)),
                witness=uncovered[:1] or None)
        worst = Fraction(0)
        witness = None
        taus = (Fraction(1, 4), Fraction(1, 2), Fraction(4, 5), Fraction(1))
        ts = (Fraction(1, 5), Fraction(1, 2), Fraction(6, 7))
        for i in range(p + 1):
            for j in range(p + 1):
                if i == j:
                    continue
                for y in barycentric_grid(p - 2, 3) if p >= 2 else []:
                    for tau in taus:
                        for t in ts:
                            gap = transition_identity_gap(p, i, j, y, tau, t)
                            if gap > worst:
                                worst = gap
                                witness = {"i": i, "j": j, "tau": str(tau),
                                           "t": str(t)}
        rep.add(f"chart-transition-exact-p{p}", worst == 0,
                max_violation=float(worst), witness=witness)
    return rep


def run_axiom2(args) -> Report:
    rep = Report("verify-axiom2",
                 {"p": args.p, "q": args.q, "trials": args.trials,
                  "tol": args.tol}, seed=args.seed)
    rng = random.Random(args.seed)
    ps = [args.p] if args.p else [1, 2, 3]
    qs = [args.q] if args.q else [1, 2, 3]
    from .geometry import AffineSimplexMap

    for p in ps:
        for q in qs:
            worst = 0.0
            ok = True
            for trial in range(args.trials):
                cols = []
                for _ in range(p + 1):
                    raw = [Fraction(rng.randrange(1, 9)) for _ in range(q + 1)]
                    tot = sum(raw)
                    cols.append(Bary(tuple(r / tot for r in raw)))
                f = AffineSimplexMap(tuple(cols))
                mat = f.matrix()
                report = probe.smoothness_probe(
                    f, p, order=1, tol=args.tol, seed=rng.randrange(10**6),
                    oracle=lambda curve, tau0: probe.affine_curve_derivative(
                        mat, curve, tau0))
                worst = max(worst, report.max_oracle_error)
                ok = ok and report.passed
            rep.add(f"affine-probes-p{p}-q{q}", ok and worst <= args.tol,
                    max_violation=worst)

    def kink(z: Bary):
        v = abs(float(z[0]) - float(z[1]))
        return (v, 1.0 - v)

    control = probe.smoothness_probe(kink, 1, order=2, tol=args.tol,
                                     seed=args.seed + 11)
    rep.add("kink-control-fails", not control.passed,
            max_violation=None,
            witness=None if not control.passed else "control map passed")
    return rep


def _subcomplexes_of(p: int):
    yield f"boundary{p}", boundary_complex(p)
    for k in range(p + 1):
        yield f"horn{p}_{k}", horn_complex(p, k)


def run_axiom3(args) -> Report:
    rep = Report("verify-axiom3", {"p": args.p, "trials": args.trials},
                 seed=args.seed)
    ps = [args.p] if args.p else [2, 3]
    rng = random.Random(args.seed)
    for p in ps:
        for name, (K, incl) in _subcomplexes_of(p):
            seen: dict[tuple, tuple] = {}
            collisions = 0
            witness = None
            cells = K.nondegenerate()
            for _ in range(args.trials):
                ref = cells[rng.randrange(len(cells))]
                raw = [Fraction(rng.randrange(1, 30))
                       for _ in range(ref.dim + 1)]
                tot = sum(raw)
                u = Bary(tuple(r / tot for r in raw))
                pt = realization.normalize(K, (EMPTY, ref), u)
                img = realization.canonical_injection(incl, pt).coords
                if img in seen and seen[img] != pt.key():
                    collisions += 1
                    witness = {"complex": name,
                               "image": [str(c) for c in img]}
                seen[img] = pt.key()
            rep.add(f"injectivity-{name}", collisions == 0,
                    max_violation=float(collisions), witness=witness)
    return rep


def _horn_grid(n: int, k: int, steps: int):
    return [z.as_floats() for z in barycentric_grid(n, steps)
            if any(z[i] == 0 for i in range(n + 1) if i != k)]


def run_axiom4(args) -> Report:
    rep = Report("verify-axiom4",
                 {"p": args.p, "k": args.k, "grid": args.grid,
                  "tol": args.tol})
    ns = [args.p] if args.p else [1, 2, 3]
    for n in ns:
        ks = [args.k] if args.k is not None else list(range(n + 1))
        steps = max(args.grid, {1: 200, 2: 25, 3: 12}[n])
        pts = [z.as_floats() for z in barycentric_grid(n, steps)]
        for k in ks:
            H = homotopy.build_full_horn_deformation(n, k)
            dev_id, wit_id = 0.0, None
            dev_end, wit_end = 0.0, None
            dev_idem, wit_idem = 0.0, None
            for z in pts:
                d = max(abs(a - b) for a, b in zip(H(z, 0.0).coords, z))
                if d > dev_id:
                    dev_id, wit_id = d, list(z)
                out = H(z, 1.0).coords
                e = min(c for i, c in enumerate(out) if i != k)
                if e > dev_end:
                    dev_end, wit_end = e, list(z)
                out2 = H(out, 1.0).coords
                d = max(abs(a - b) for a, b in zip(out, out2))
                if d > dev_idem:
                    dev_idem, wit_idem = d, list(z)
            dev_fix, wit_fix = 0.0, None
            for z in _horn_grid(n, k, min(steps, 12)):
                for s in (0.2, 0.45, 0.7, 0.9, 1.0):
                    d = max(abs(a - b) for a, b in zip(H(z, s).coords, z))
                    if d > dev_fix:
                        dev_fix, wit_fix = d, {"point": list(z), "s": s}

            def grid_witness(contract, violation, argmax):
                return {"contract": contract, "max_violation": violation,
                        "argmax_point": argmax}

            rep.add(f"identity-at-0-({n},{k})", dev_id <= 1e-12, dev_id,
                    witness=grid_witness("identity-at-0", dev_id, wit_id))
            rep.add(f"horn-fixed-({n},{k})", dev_fix <= args.tol, dev_fix,
                    witness=grid_witness("horn-fixed", dev_fix, wit_fix))
            rep.add(f"lands-in-horn-({n},{k})", dev_end <= args.tol, dev_end,
                    witness=grid_witness("lands-in-horn", dev_end, wit_end))
            rep.add(f"retraction-idempotent-({n},{k})", dev_idem <= args.tol,
                    dev_idem,
                    witness=grid_witness("retraction-idempotent", dev_idem,
                                         wit_idem))
    return rep


def run_fill_horn(args) -> Report:
    rep = Report("fill-horn", {"p": args.p, "k": args.k, "grid": args.grid,
                               "tol": args.tol})
    filled = engine.fill_horn_numeric(lambda z: z, args.p, args.k)
    worst = 0.0
    wit = None
    for z in _horn_grid(args.p, args.k, args.grid):
        out = filled(z).coords
        dev = max(abs(a - b) for a, b in zip(out, z))
        if dev > worst:
            worst, wit = dev, list(z)
    rep.add("restriction-reproduces-input", worst <= args.tol, worst,
            witness={"contract": "restriction-reproduces-input",
                     "max_violation": worst, "argmax_point": wit})
    return rep


def _map_from_args(args) -> SimplicialMap:
    if getattr(args, "map_file", None):
        return load_map_file(args.map_file)
    if not args.map:
        raise ValueError("one of --map or --map-file is required")
    return named_map(args.map)


def run_rlp(args) -> Report:
    f = _map_from_args(args)
    f.validate()
    gens = engine.GeneratingSet(args.gens, args.max_dim)
    rep = Report("rlp", {"map": args.map or args.map_file, "gens": args.gens,
                         "max_dim": args.max_dim})
    report = engine.rlp_check(f, gens)
    rep.add("rlp", report.has_rlp,
            max_violation=float(len(report.failures)),
            witness=(report.failures[0].to_json_dict()
                     if report.failures else None))
    rep.parameters["checked_squares"] = report.checked
    rep.parameters["failing_squares"] = len(report.failures)
    return rep


def run_factorize(args) -> Report:
    f = _map_from_args(args)
    f.validate()
    gens = engine.GeneratingSet(args.gens, args.max_dim)
    rep = Report("factorize", {"map": args.map or args.map_file,
                               "gens": args.gens,
                               "max_dim": args.max_dim,
                               "max_stages": args.max_stages})
    stages = engine.igc_factor(f, gens, max_stages=args.max_stages,
                               max_problems=args.max_problems)
    for st in stages:
        ok = st.j.is_injective()
        comp = st.q.compose(st.j)
        exact = all(comp.assignment[r.id] == f.assignment[r.id]
                    for r in f.source.nondegenerate())
        rep.add(f"stage-{st.n}-invariants", ok and exact,
                witness=st.to_json_dict())
    rep.add("rlp-clean-within-budget", not stages[-1].residual,
            max_violation=float(len(stages[-1].residual)))
    return rep


def run_pi(args) -> Report:
    if args.complex_file:
        with open(args.complex_file) as fh:
            X = FiniteSimplicialSet.from_json(fh.read())
    else:
        X = named_complex(args.complex)
    rep = Report("pi", {"complex": args.complex or args.complex_file})
    count, comps = engine.pi0(X)
    rep.add("pi0", True, witness={"components": count,
                                  "classes": [list(c) for c in comps]})
    if count == 1:
        rep.add("edge-group-rank", True, witness=engine.edge_group_rank(X))
    else:
        rep.add("edge-group-rank", True, skipped=True,
                witness="complex is not connected")
    return rep


def run_homotopy_eval(args) -> Report:
    coords = tuple(float(c) for c in args.point.split(","))
    rep = Report("homotopy-eval",
                 {"p": args.p, "k": args.k, "kind": args.kind,
                  "point": list(coords), "s": args.s, "eps": args.eps})
    if args.kind == "full":
        H = homotopy.build_full_horn_deformation(args.p, args.k)
    elif args.kind == "halfopen":
        H = homotopy.build_halfopen_deformation(args.p, args.k)
    elif args.kind == "boundary-t":
        H = homotopy.build_boundary_homotopy_T(args.p, args.eps)
    else:
        raise ValueError(f"unknown homotopy kind {args.kind!r}")
    out = H(coords, args.s)
    payload = {"point": list(coords), "s": args.s,
               "result": list(out.coords), "stage": H.stage_of(args.s)}
    rep.add("evaluation", True, witness=payload)
    return rep


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="smoothsimplex",
        description="verification suites for the smooth-simplex constructions")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--json", dest="json_path", default=None,
                        help="also write the JSON report to this path")
        sp.add_argument("--measure-time", action="store_true",
                        help="fill in wall-clock timing (breaks byte-identical reports)")

    sp = sub.add_parser("verify-axiom1", help="chart covering and transitions")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--grid", type=int, default=DEFAULT_GRID)
    common(sp)

    sp = sub.add_parser("verify-axiom2", help="smoothness probes on affine maps")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--q", type=int, default=None)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--tol", type=float, default=DEFAULT_DERIV_TOL)
    common(sp)

    sp = sub.add_parser("verify-axiom3", help="canonical-injection injectivity")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--trials", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(sp)

    sp = sub.add_parser("verify-axiom4", help="horn deformation contracts")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--grid", type=int, default=DEFAULT_GRID)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common(sp)

    sp = sub.add_parser("fill-horn", help="numeric horn filling")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--grid", type=int, default=DEFAULT_GRID)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common(sp)

    sp = sub.add_parser("rlp", help="right-lifting-property check")
    sp.add_argument("--map", default=None, help="a named built-in map")
    sp.add_argument("--map-file", default=None,
                    help="JSON file with source, target, and assignment")
    sp.add_argument("--gens", choices=("I", "J"), required=True)
    sp.add_argument("--max-dim", type=int, default=2)
    common(sp)

    sp = sub.add_parser("factorize", help="bounded gluing factorization")
    sp.add_argument("--map", default=None, help="a named built-in map")
    sp.add_argument("--map-file", default=None,
                    help="JSON file with source, target, and assignment")
    sp.add_argument("--gens", choices=("I", "J"), required=True)
    sp.add_argument("--max-dim", type=int, default=2)
    sp.add_argument("--max-stages", type=int, default=2)
    sp.add_argument("--max-problems", type=int, default=16)
    common(sp)

    sp = sub.add_parser("pi", help="components and edge-group rank")
    sp.add_argument("--complex", default=None)
    sp.add_argument("--complex-file", default=None)
    common(sp)

    sp = sub.add_parser("homotopy-eval", help="evaluate a deformation")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--kind", choices=("full", "halfopen", "boundary-t"),
                    default="full")
    sp.add_argument("--point", required=True,
                    help="comma-separated barycentric coordinates")
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--eps", type=float, default=0.2)
    common(sp)

    return ap


RUNNERS = {
    "verify-axiom1": run_axiom1,
    "verify-axiom2": run_axiom2,
    "verify-axiom3": run_axiom3,
    "verify-axiom4": run_axiom4,
    "fill-horn": run_fill_horn,
    "rlp": run_rlp,
    "factorize": run_factorize,
    "pi": run_pi,
    "homotopy-eval": run_homotopy_eval,
}


def run(argv: Optional[list[str]] = None) -> tuple[Report, int]:
    """Parse, execute, and return the report with its exit status."""
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    report = RUNNERS[args.command](args)
    if args.measure_time:
        report.timing_s = time.perf_counter() - t0
    return report, (0 if report.ok else 1)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        report = RUNNERS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.measure_time:
        report.timing_s = time.perf_counter() - t0
    payload = json.dumps(report.to_json_dict(), sort_keys=True, indent=2)
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(payload + "\n")
    if args.format == "json":
        print(payload)
    else:
        print(report.render_text())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
