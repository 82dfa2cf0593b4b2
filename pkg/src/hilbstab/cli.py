"""Command-line interface: every operation as a subcommand printing JSON.

Exit status 0 means computed, 2 means inconclusive or out of budget, 1 is an error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import platform
import sys
from fractions import Fraction

from . import __version__
from .curves import FIXTURES, COMPONENTS, HyperellipticData, fixture_text, hyperelliptic_pluricanonical_ideal, wiman_ideal
from .fan import enumerate_initial_ideals
from .groebner import (
    MonomialIdeal,
    buchberger,
    gotzmann_number,
    initial_ideal,
    truncated_hilbert,
)
from .polyring import GREVLEX, TIEBREAKS, Ideal, ParseError, TermOrder, parse_ideal
from .reps import DiagonalAction, multiplicity_free, plusminus_basis_change, sl_normalize
from .stability import (
    chow_state,
    monte_carlo_check,
    mu,
    mu_at,
    parabola_fit,
    polarization_slope,
    slope_limit,
    verify_certificate,
)
from .state import (
    CONVENTIONS,
    INSIDE,
    INTERIOR,
    BudgetExceeded,
    barycenter,
    classify_containment,
    degree_state,
    ideal_oracle,
    pluecker_coordinates,
    proximum_from_oracle,
    state_polytope,
    verify_proximum,
)

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse would exit 2, which is reserved for inconclusive results
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_ERROR)


# ------------------------------------------------------------------ helpers


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _fracs(text: str) -> tuple:
    try:
        return tuple(Fraction(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"expected comma-separated rationals, got {text!r}")


def _ideal_text(raw: str) -> str:
    """Accept raw ideal text or the JSON emitted by ``curve``."""
    s = raw.lstrip()
    if s.startswith("{"):
        data = json.loads(s)
        data = data.get("result", data)
        if "ideal" not in data:
            raise UsageError("JSON input has no 'ideal' field")
        return data["ideal"]
    return raw


def _read_input(args, state):
    path = getattr(args, "input", None)
    if path in (None, "-"):
        raw = sys.stdin.read()
        label = "<stdin>"
    else:
        with open(path) as fh:
            raw = fh.read()
        label = path
    state["inputs"][label] = hashlib.sha256(raw.encode()).hexdigest()
    return raw


def _load_ideal(args, state) -> Ideal:
    text = _ideal_text(_read_input(args, state))
    I = parse_ideal(text)
    if not I.generators:
        raise UsageError("input ideal has no generators")
    return I


def _weights(args, I: Ideal) -> tuple:
    if args.weights is None:
        raise UsageError("--weights is required")
    w = _ints(args.weights)
    if len(w) != I.ring.num_vars:
        raise UsageError(f"--weights has {len(w)} entries, ring has {I.ring.num_vars} variables")
    return w


def _degrees(args) -> tuple:
    ms = _ints(str(args.m))
    if not ms or any(m < 1 for m in ms):
        raise UsageError("--m must list positive degrees")
    return ms


def _fan(I, args):
    return enumerate_initial_ideals(
        I,
        tiebreak=args.tiebreak,
        budget_cones=args.budget_cones,
        budget_seconds=args.budget_seconds,
        workers=args.workers,
    )


def _gens(I: Ideal) -> list:
    order = TermOrder.default(I.ring.num_vars)
    return [g.to_string(order) for g in I.generators]


# ----------------------------------------------------------------- commands


def cmd_groebner(args, st):
    I = _load_ideal(args, st)
    n = I.ring.num_vars
    order = TermOrder(_weights(args, I), args.tiebreak) if args.weights else TermOrder.default(n, args.tiebreak)
    G = buchberger(I, order, maxdeg=args.maxdeg)
    out = {
        "variables": list(I.ring.variable_names),
        "basis": [p.to_string(order) for p in G.elements],
        "initial_ideal": G.initial_ideal().to_strings(),
        "truncation": G.truncation,
    }
    return out, EXIT_OK


def cmd_initial_ideal(args, st):
    I = _load_ideal(args, st)
    res = initial_ideal(I, _weights(args, I), args.tiebreak, maxdeg=args.maxdeg)
    return {"initial_ideal": res.ideal.to_strings(), "tiebreak_used": res.tiebreak_used}, EXIT_OK


def cmd_fan(args, st):
    I = _load_ideal(args, st)
    fan = _fan(I, args)
    ideals = sorted(J.to_strings() for J in fan.initial_ideals())
    out = {"complete": fan.complete, "count": len(fan), "initial_ideals": ideals}
    if args.cones:
        out["cones"] = fan.to_json()["cones"]
    return out, EXIT_OK if fan.complete else EXIT_INCONCLUSIVE


def cmd_state(args, st):
    I = _load_ideal(args, st)
    out = []
    for m in _degrees(args):
        c = degree_state(I, m, args.convention, w=_weights(args, I), tiebreak=args.tiebreak)
        out.append(c.to_json())
    return {"characters": out}, EXIT_OK


def cmd_state_polytope(args, st):
    I = _load_ideal(args, st)
    fan = _fan(I, args)
    out = [state_polytope(I, m, args.convention, fan=fan).to_json() for m in _degrees(args)]
    return {"complete": fan.complete, "polytopes": out}, EXIT_OK if fan.complete else EXIT_INCONCLUSIVE


def cmd_classify(args, st):
    I = _load_ideal(args, st)
    fan = _fan(I, args)
    results = []
    for m in _degrees(args):
        P = state_polytope(I, m, args.convention, fan=fan)
        v = classify_containment(P.characters, barycenter(I, m, args.convention))
        row = v.to_json()
        row["m"] = m
        row["vertex_count"] = len(P.characters)
        row["destabilizing_weight"] = [-x for x in v.separating] if v.separating else None
        results.append(row)
    return {"complete": fan.complete, "results": results}, EXIT_OK if fan.complete else EXIT_INCONCLUSIVE


def cmd_proximum(args, st):
    I = _load_ideal(args, st)
    (m,) = _degrees(args)[:1]
    oracle = ideal_oracle(I, m, args.convention, args.tiebreak)
    target = barycenter(I, m, args.convention)
    n = I.ring.num_vars
    start_w = _weights(args, I) if args.weights else tuple(range(n))
    start = oracle(tuple(-x for x in start_w))
    prox = proximum_from_oracle(oracle, target, start)
    out = prox.to_json()
    out["m"] = m
    out["target"] = [str(x) for x in prox.target]
    out["target_in_hull"] = not any(prox.direction)
    out["kkt_verified"] = prox.kkt_gap >= 0 and verify_proximum(prox, prox.support)
    return out, EXIT_OK


def cmd_mu(args, st):
    I = _load_ideal(args, st)
    w = _weights(args, I)
    vals = [mu(I, w, m, args.tiebreak) for m in _degrees(args)]
    if len(vals) == 1:
        return vals[0].to_json(), EXIT_OK
    return {"values": [v.to_json() for v in vals]}, EXIT_OK


def _fit(args, st):
    I = _load_ideal(args, st)
    w = _weights(args, I)
    samples = [(m, mu(I, w, m, args.tiebreak).value) for m in _degrees(args)]
    return parabola_fit(samples), samples


def cmd_parabola(args, st):
    poly, samples = _fit(args, st)
    out = poly.to_json()
    out["samples"] = [[m, v] for m, v in samples]
    return out, EXIT_OK


def cmd_mu_at(args, st):
    poly, samples = _fit(args, st)
    at = Fraction(args.at)
    return {"at": str(at), "mu": str(mu_at(poly, at)), "parabola": poly.to_json()}, EXIT_OK


def cmd_monte_carlo(args, st):
    I = _load_ideal(args, st)
    (m,) = _degrees(args)[:1]
    cert = monte_carlo_check(
        I,
        m,
        batch=args.batch,
        seed=args.seed,
        max_rounds=args.rounds,
        convention=args.convention,
        tiebreak=args.tiebreak,
        workers=args.workers,
        max_weights=args.max_weights,
    )
    return cert.to_json(), EXIT_OK if cert.conclusive else EXIT_INCONCLUSIVE


def cmd_verify(args, st):
    I = _load_ideal(args, st)
    with open(args.certificate) as fh:
        raw = fh.read()
    st["inputs"][args.certificate] = hashlib.sha256(raw.encode()).hexdigest()
    data = json.loads(raw)
    cert = data.get("result", data)
    items = [tuple(w) for w in cert["weights"]]
    v = verify_certificate(I, cert["m"], items, cert.get("convention", INSIDE), args.tiebreak)
    claimed = cert.get("kind")
    agrees = {"stable": v.status == INTERIOR, "semistable": v.status != "outside"}.get(claimed, True)
    out = v.to_json()
    out["claimed"] = claimed
    out["agrees"] = agrees
    return out, EXIT_OK if agrees else EXIT_ERROR


def cmd_chow(args, st):
    I = _load_ideal(args, st)
    fan = _fan(I, args)
    if not fan.complete:
        return {"complete": False, "count": len(fan)}, EXIT_INCONCLUSIVE
    cs = chow_state(I, fan, args.r, start_degree=args.start_degree)
    return cs.to_json(), EXIT_OK


def cmd_plucker(args, st):
    I = _load_ideal(args, st)
    (m,) = _degrees(args)[:1]
    sets, coords, cols = pluecker_coordinates(I, m, budget=args.budget, tiebreak=args.tiebreak)
    names = [I.ring.monomial_str(c) for c in cols]
    return {"columns": names, "sets": [list(s) for s in sets], "coordinates": list(coords)}, EXIT_OK


def cmd_hilbert(args, st):
    I = _load_ideal(args, st)
    rows = []
    for m in _degrees(args):
        h = truncated_hilbert(I, m)
        rows.append({"m": m, "R_hat": h.R_hat, "Q_hat": h.Q_hat, "P_hat": h.P_hat})
    return {"hilbert": rows}, EXIT_OK


def cmd_gotzmann(args, st):
    return {"a": args.a, "b": args.b, "gotzmann": gotzmann_number(args.a, args.b)}, EXIT_OK


def _ideal_out(I: Ideal, **extra):
    out = {"ideal": I.to_text(), "variables": list(I.ring.variable_names), "generators": _gens(I)}
    out.update(extra)
    return out


def cmd_curve(args, st):
    if args.kind == "wiman":
        if args.genus is None:
            raise UsageError("--genus is required")
        return _ideal_out(wiman_ideal(args.genus, args.nu), genus=args.genus, nu=args.nu), EXIT_OK
    if args.kind == "hyperelliptic":
        if args.genus is None or args.coeffs is None:
            raise UsageError("--genus and --coeffs are required")
        data = HyperellipticData(args.genus, _fracs(args.coeffs), args.nu)
        return _ideal_out(hyperelliptic_pluricanonical_ideal(data), genus=args.genus, nu=args.nu), EXIT_OK
    if not args.name:
        raise UsageError(f"fixture name required; choose from {', '.join(FIXTURES + COMPONENTS)}")
    text = fixture_text(args.name)
    return _ideal_out(parse_ideal(text), fixture=args.name), EXIT_OK


def cmd_fixture(args, st):
    args.kind = "fixture"
    return cmd_curve(args, st)


def _action(text: str) -> DiagonalAction:
    if ":" not in text:
        raise UsageError(f"action must look like MODULUS:w0,w1,...; got {text!r}")
    n, ws = text.split(":", 1)
    return DiagonalAction(int(n), _ints(ws))


def cmd_reps(args, st):
    if args.kind == "multfree":
        if not args.action:
            raise UsageError("give at least one --action MODULUS:weights")
        ok, coll = multiplicity_free([_action(a) for a in args.action])
        return {"multiplicity_free": ok, "collisions": coll}, EXIT_OK
    if args.kind == "slnormalize":
        if not args.action or len(args.action) != 1:
            raise UsageError("give exactly one --action MODULUS:weights")
        return sl_normalize(_action(args.action[0])).to_json(), EXIT_OK
    I = _load_ideal(args, st)
    swaps = [tuple(p.split(":")) for p in (args.swaps or "").split(",") if p]
    fixed = [v for v in (args.fixed or "").split(",") if v]
    scaled = [v for v in (args.scaled or "").split(",") if v]
    return _ideal_out(plusminus_basis_change(I, swaps, fixed, scaled, assign=args.assign)), EXIT_OK


def cmd_slope(args, st):
    lam, delta, slope = polarization_slope(args.nu, Fraction(args.m))
    return {
        "nu": args.nu,
        "m": str(Fraction(args.m)),
        "lambda": str(lam),
        "delta": str(delta),
        "slope": str(slope),
        "limit": str(slope_limit(args.nu)),
    }, EXIT_OK


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-cones", type=int, default=None)
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--convention", choices=CONVENTIONS, default=INSIDE)
    common.add_argument("--tiebreak", choices=TIEBREAKS, default=GREVLEX)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--input", "-i", default=None, help="ideal file (default: stdin)")

    p = _Parser(prog="hilbstab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("groebner", cmd_groebner, help="reduced Groebner basis")
    sp.add_argument("--weights")
    sp.add_argument("--maxdeg", type=int)
    sp = add("initial-ideal", cmd_initial_ideal, help="monomial initial ideal for a weight")
    sp.add_argument("--weights")
    sp.add_argument("--maxdeg", type=int)
    sp = add("fan", cmd_fan, help="all monomial initial ideals")
    sp.add_argument("--cones", action="store_true", help="include cone data")
    for name, func in (("state", cmd_state), ("state-polytope", cmd_state_polytope), ("classify", cmd_classify)):
        sp = add(name, func)
        sp.add_argument("--m", required=True)
        if name == "state":
            sp.add_argument("--weights")
    sp = add("proximum", cmd_proximum, help="nearest state-polytope point to the barycenter")
    sp.add_argument("--m", required=True)
    sp.add_argument("--weights", help="weight selecting the starting vertex")
    sp = add("mu", cmd_mu, help="weight index of a one-parameter subgroup")
    sp.add_argument("--weights")
    sp.add_argument("--m", required=True)
    sp = add("parabola", cmd_parabola, help="fit mu(m) = a(m-1)(m-r)")
    sp.add_argument("--weights")
    sp.add_argument("--m", default="2,3,4")
    sp = add("mu-at", cmd_mu_at, help="mu at a rational degree via the fitted parabola")
    sp.add_argument("--weights")
    sp.add_argument("--m", default="2,3")
    sp.add_argument("--at", required=True)
    sp = add("monte-carlo", cmd_monte_carlo, help="random-weight stability certificate")
    sp.add_argument("--m", required=True)
    sp.add_argument("--rounds", type=int, default=10)
    sp.add_argument("--batch", type=int, default=None)
    sp.add_argument("--max-weights", type=int, default=None)
    sp = add("verify", cmd_verify, help="re-check a Monte Carlo certificate")
    sp.add_argument("--certificate", required=True)
    sp = add("chow", cmd_chow, help="Chow state vertices and classification")
    sp.add_argument("--r", type=int, required=True, help="dimension of the variety")
    sp.add_argument("--start-degree", type=int, default=None)
    sp = add("plucker", cmd_plucker, help="Pluecker coordinates of the Hilbert point")
    sp.add_argument("--m", required=True)
    sp.add_argument("--budget", type=int, default=100000)
    sp = add("hilbert", cmd_hilbert, help="Hilbert function values")
    sp.add_argument("--m", required=True)
    sp = add("gotzmann", cmd_gotzmann, help="Gotzmann number of a linear Hilbert polynomial")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp = add("curve", cmd_curve, help="generate or load a curve ideal")
    sp.add_argument("kind", choices=("wiman", "hyperelliptic", "fixture"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("--genus", type=int)
    sp.add_argument("--nu", type=int, default=2)
    sp.add_argument("--coeffs", help="coefficients of f, constant term first")
    sp = add("fixture", cmd_fixture, help="shorthand for 'curve fixture NAME'")
    sp.add_argument("name")
    sp.set_defaults(genus=None, nu=2, coeffs=None)
    sp = add("reps", cmd_reps, help="diagonal action bookkeeping")
    sp.add_argument("kind", choices=("multfree", "slnormalize", "plusminus"))
    sp.add_argument("--action", action="append", help="MODULUS:w0,w1,... (repeatable)")
    sp.add_argument("--swaps", help="pairs like a:l,b:k")
    sp.add_argument("--fixed")
    sp.add_argument("--scaled")
    sp.add_argument("--assign", choices=("eigenbasis", "positional"), default="eigenbasis")
    sp = add("slope", cmd_slope, help="slope of the pluricanonical Hilbert polarization")
    sp.add_argument("--nu", type=int, required=True)
    sp.add_argument("--m", required=True)
    return p


def _manifest(args, state) -> dict:
    arguments = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
    return {
        "command": args.command,
        "arguments": arguments,
        "seed": args.seed,
        "versions": {"hilbstab": __version__, "python": platform.python_version()},
        "input_sha256": state["inputs"],
    }


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        print("hilbstab: error: a subcommand is required", file=sys.stderr)
        return EXIT_ERROR
    state = {"inputs": {}}
    try:
        result, code = args.func(args, state)
    except BudgetExceeded as exc:
        result, code = {"budget_exceeded": str(exc)}, EXIT_INCONCLUSIVE
    except (UsageError, ParseError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"hilbstab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    doc = {"manifest": _manifest(args, state), "result": result}
    json.dump(doc, sys.stdout, sort_keys=True, default=str)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
