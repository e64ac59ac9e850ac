"""orbitlab command line: algebra, verify-theorem, multiplicity, cones, selftest.

Exit codes: 0 ok, 1 hard failure, 2 invalid input, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import report as rpt
from .cascade import NoOpenOrbit, canonical_representatives, verify_prop51_hypotheses
from .complex_roots import NotHermitian
from .lie import algebra_to_json, load_algebra, save_algebra
from .multiplicity import NotAdmissible, multiplicity_report
from .orbits import (NotStronglyElliptic, DegenerateFunctional, Signs, cascade_signature, is_open_orbit_point,
                     kostant_hull_check, lemma41_check, verify_theorem31)
from .real_forms import FAMILIES, RealFormSpec, UnsupportedRealForm, build_real_form, realize, iwasawa_n
from .structure import load_structure

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3

DEFAULT_ALGEBRAS = ("su(1,1)", "su(2,1)", "su(2,2)", "sp(4,R)", "sp(6,R)", "so(2,4)", "so*(6)", "so(4,1)", "so(5,1)")

_ALIASES = {"su": "su_pq", "sp": "sp_2n_R", "so": "so_p_q", "so*": "so_2n_star", "so_star": "so_2n_star"}


@dataclass
class RunConfig:
    command: str
    spec: RealFormSpec | None
    f_coords: tuple | None = None
    lambda_coords: tuple | None = None
    n_samples: int | None = None
    seed: int = 0
    output_path: str | None = None
    cache_dir: str | None = None
    mc_samples: int = 10 ** 6
    extra: dict = field(default_factory=dict)


def parse_rationals(tokens) -> tuple:
    out = []
    for tok in tokens or ():
        for part in str(tok).split(","):
            part = part.strip()
            if part:
                out.append(Fraction(part))
    return tuple(out)


def make_spec(family: str | None, params, name: str | None = None) -> RealFormSpec | None:
    if name:
        return RealFormSpec.parse(name)
    if family is None:
        return None
    fam = _ALIASES.get(family, family)
    return RealFormSpec(fam, tuple(params or ()))


# -- structure access, optionally through the JSON cache ------------------------

def _cache_path(cache_dir: str, spec: RealFormSpec) -> Path:
    return Path(cache_dir) / f"{spec.family}_{'_'.join(map(str, spec.params))}.json"


def structure_for(config: RunConfig):
    spec = config.spec
    if not config.cache_dir:
        return load_structure(spec)
    path = _cache_path(config.cache_dir, spec)
    if path.exists():
        return load_structure(spec, load_algebra(path))
    path.parent.mkdir(parents=True, exist_ok=True)
    save_algebra(build_real_form(spec), path)
    return load_structure(spec)


# -- commands ---------------------------------------------------------------

def cmd_algebra(config: RunConfig):
    s = structure_for(config)
    c = s.cascade
    datum = s.datum
    g = s.g
    real = realize(config.spec)
    n = iwasawa_n(datum)
    out = {
        "command": "algebra",
        "spec": config.spec.to_json(),
        "name": config.spec.name,
        "dims": {"g": g.dim, "k": real.dim_k, "p": g.dim - real.dim_k, "a": datum.a.dim, "n": n.dim,
                 "m": datum.m_subspace.dim, "t": s.roots.t_basis.dim if s.roots else None},
        "restricted_roots": [{"root": r, "multiplicity": datum.root_spaces[r].dim, "positive": r in datum.positive}
                             for r in datum.roots],
        "upsilon": list(c.upsilon),
        "r": c.r,
        "exists_open_orbit": c.exists_open_orbit,
        "open_orbit_count": 2 ** c.r if c.exists_open_orbit else 0,
        "hermitian": s.hermitian,
    }
    if c.exists_open_orbit:
        p51 = verify_prop51_hypotheses(c)
        out["prop51_hypotheses"] = {"ok": p51.ok, **p51.checks}
    if s.roots is not None:
        d = s.roots
        out["complex_roots"] = [{"coords": r.coords, "compact": r.compact} for r in d.roots]
        out["t_gram"] = d.ip.gram
        out["weyl_k_order"] = len(s.weyl_k)
        out["regular_element"] = s.regular
        out["delta_c_plus"] = [r.coords for r in s.delta_c_plus]
    if s.rho is not None:
        out["delta_n_plus"] = [r.coords for r in s.delta_n_plus]
        out["rho_G"], out["rho_K"], out["rho_n"] = s.rho
        out["z0"] = s.z0
    return out, EXIT_OK


def cmd_verify_theorem(config: RunConfig):
    s = structure_for(config)
    n = config.n_samples if config.n_samples is not None else 200
    if s.roots is None:
        res = verify_theorem31(s, (), n, config.seed)
    else:
        f = _coords(config.f_coords, s, "--f")
        res = verify_theorem31(s, f, n, config.seed)
    res["f"] = config.f_coords
    code = {"VIOLATION": EXIT_FAIL, "INCONCLUSIVE": EXIT_INCONCLUSIVE}.get(res["verdict"], EXIT_OK)
    return {"command": "verify-theorem", "spec": config.spec.to_json(), **res}, code


def cmd_multiplicity(config: RunConfig):
    s = structure_for(config)
    lam = _coords(config.lambda_coords, s, "--lambda")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = multiplicity_report(s, lam, config.mc_samples, config.seed)
    res["warnings"] = [str(w.message) for w in caught]
    ok = res["all_equal"]
    if res.get("h_point") is not None:
        ok = ok and res["h_point"]["open"]
    if "monte_carlo" in res:
        res["monte_carlo"]["within_2_percent"] = res["monte_carlo"]["relative_error"] < 0.02
        ok = ok and res["monte_carlo"]["within_2_percent"]
    return {"command": "multiplicity", "spec": config.spec.to_json(), "ok": ok, **res}, EXIT_OK if ok else EXIT_FAIL


def cmd_cones(config: RunConfig):
    from .cones import cone_tests, dual_action_check
    s = structure_for(config)
    n = config.n_samples if config.n_samples is not None else 100
    res = cone_tests(s, n, config.seed)
    dual = dual_action_check(s, min(n, 100), config.seed)
    hull = kostant_hull_check(s)
    ok = res["ok"] and dual["ok"] and hull["all_inside"]
    out = {"command": "cones", "spec": config.spec.to_json(), "ok": ok, "cones": res, "dual_action": dual,
           "kostant_hull": hull}
    return out, EXIT_OK if ok else EXIT_FAIL


def selftest_one(spec: RealFormSpec, n_samples: int, seed: int) -> dict:
    from .lie import algebra_from_json
    s = load_structure(spec)
    g = s.g
    checks = {
        "antisymmetric": g.is_antisymmetric(),
        "jacobi": not g.jacobi_violations(),
        "theta_involution": g.theta_is_involution(),
        "theta_automorphism": not g.theta_violations(),
        "killing_invariant": not g.killing_invariance_violations(),
        "cache_roundtrip": algebra_to_json(algebra_from_json(algebra_to_json(g))) == algebra_to_json(g),
    }
    c = s.cascade
    if c.exists_open_orbit:
        reps = canonical_representatives(c)
        checks["canonical_reps_open"] = all(is_open_orbit_point(c, r.covector) for r in reps)
        rng = np.random.default_rng([seed, 0])
        agree = True
        for i in range(n_samples):
            lam = [Fraction(int(v)) for v in rng.integers(-2, 3, size=len(c.s_basis))]
            if i % 2:
                lam = [x if rng.random() < 0.4 else Fraction(0) for x in lam]
            agree &= is_open_orbit_point(c, lam) == isinstance(cascade_signature(c, lam), Signs)
        checks["openness_agreement"] = agree
    if s.delta_n_plus is not None:
        checks["kostant_hull"] = kostant_hull_check(s)["all_inside"]
        checks["lemma41_x1"] = all(lemma41_check(s, r, 20, seed)["x1_constant"] for r in canonical_representatives(c))
    return checks


def cmd_selftest(config: RunConfig):
    specs = [config.spec] if config.spec else [RealFormSpec.parse(x) for x in DEFAULT_ALGEBRAS]
    n = config.n_samples if config.n_samples is not None else 200
    results = {sp.name: selftest_one(sp, n, config.seed) for sp in specs}
    ok = all(all(v.values()) for v in results.values())
    return {"command": "selftest", "ok": ok, "n_samples": n, "seed": config.seed, "results": results}, \
        EXIT_OK if ok else EXIT_FAIL


def _coords(coords, s, flag):
    if coords is None:
        raise ValueError(f"{flag} is required")
    l = s.roots.t_basis.dim
    if len(coords) != l:
        raise ValueError(f"{flag} needs {l} coordinates on the t-basis")
    return coords


COMMANDS = {
    "algebra": cmd_algebra,
    "verify-theorem": cmd_verify_theorem,
    "multiplicity": cmd_multiplicity,
    "cones": cmd_cones,
    "selftest": cmd_selftest,
}

INVALID = (UnsupportedRealForm, NotAdmissible, NotStronglyElliptic, DegenerateFunctional, NoOpenOrbit,
           NotHermitian, ValueError, ZeroDivisionError)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbitlab", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--family", help=f"one of {', '.join(FAMILIES)} (aliases su, sp, so, so*)")
    p.add_argument("--params", nargs="+", type=int, help="family parameters, e.g. 2 1 for su(2,1)")
    p.add_argument("--algebra", help="algebra by name, e.g. 'sp(4,R)' (alternative to --family/--params)")
    p.add_argument("--f", nargs="+", dest="f", help="f on the t-basis, e.g. 2,-1 or 2 -1")
    p.add_argument("--lambda", nargs="+", dest="lam", help="lambda on the t-basis")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--mc-samples", type=int, default=10 ** 6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--cache", help="directory for cached structure constants")
    return p


def config_from_args(args) -> RunConfig:
    spec = make_spec(args.family, args.params, args.algebra)
    if spec is None and args.command != "selftest":
        raise UnsupportedRealForm("an algebra is required (--family/--params or --algebra)")
    return RunConfig(
        command=args.command,
        spec=spec,
        f_coords=parse_rationals(args.f) if args.f else None,
        lambda_coords=parse_rationals(args.lam) if args.lam else None,
        n_samples=args.samples,
        seed=args.seed,
        output_path=args.out,
        cache_dir=args.cache,
        mc_samples=args.mc_samples,
    )


def run(config: RunConfig) -> tuple[dict, int]:
    try:
        return COMMANDS[config.command](config)
    except INVALID as exc:
        return {"command": config.command, "error": f"{type(exc).__name__}: {exc}"}, EXIT_INVALID


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except (UnsupportedRealForm, ValueError) as exc:
        print(rpt.dumps({"command": args.command, "error": str(exc)}))
        return EXIT_INVALID
    report, code = run(config)
    report["exit_code"] = code
    text = rpt.dumps(report)
    if config.output_path:
        Path(config.output_path).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
