"""Command-line front end.

Every command prints one document, either as JSON (sorted keys, rationals
as "num/den" strings) or as an aligned two-column table.  Before printing,
the factors in the document are multiplied back together and compared
with the final value; a mismatch is an internal error.

Exit codes: 0 success, 1 a verification mismatch, 2 invalid input,
3 unsupported input (including enumeration-cap refusals), 4 an internal
consistency failure.
"""

import argparse
import json
import re
import sys
from fractions import Fraction
from math import prod
from pathlib import Path

from . import __version__, hermlocal, massform, shimcount, verification
from .errors import ArtifactError, ConsistencyError, DomainError, UnsupportedInput
from .exactnum import QuadField, l_value
from .hermlocal import GramMatrix, Splitting
from .limits import CAP_ENV

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_INTERNAL = 4


# --- parsing helpers -----------------------------------------------------------------

def parse_field(args):
    if args.m is not None:
        return QuadField(args.m)
    if args.disc is not None:
        return QuadField.from_disc(args.disc)
    raise DomainError("give the field with --disc D or --m M")


def parse_gram(text, field):
    """identity:n, H or H^k, diag:a,b,..., inline JSON, or a path to a JSON file."""
    text = text.strip()
    m = field.m
    match = re.fullmatch(r"identity:(\d+)", text)
    if match:
        return GramMatrix.identity(m, int(match.group(1)))
    match = re.fullmatch(r"H(?:\^(\d+))?", text)
    if match:
        return GramMatrix.hyperbolic(m, int(match.group(1) or 1))
    match = re.fullmatch(r"diag:(-?\d+(?:,-?\d+)*)", text)
    if match:
        return GramMatrix.diagonal(m, [int(v) for v in match.group(1).split(",")])
    if text.startswith("{"):
        gram = GramMatrix.from_json(text)
    elif Path(text).is_file():
        gram = GramMatrix.from_json(Path(text))
    else:
        raise DomainError(f"cannot read Gram matrix {text!r}: not a shorthand, JSON object or file")
    if gram.m != m:
        raise DomainError(f"Gram matrix declares m = {gram.m} but the field is {field.label()}")
    return gram


def parse_signature(text):
    match = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", text)
    if not match:
        raise DomainError(f"signature must look like r,s; got {text!r}")
    return int(match.group(1)), int(match.group(2))


def _gram_or_identity(args, field, n):
    if args.gram is None:
        return GramMatrix.identity(field.m, n)
    gram = parse_gram(args.gram, field)
    if gram.n != n:
        raise DomainError(f"signature has rank {n} but the Gram matrix has rank {gram.n}")
    return gram


def _shimura_input(args):
    field = parse_field(args)
    r, s = parse_signature(args.signature)
    gram = _gram_or_identity(args, field, r + s)
    return shimcount.ShimuraInput(field, gram, r, s, args.prime, args.level)


def _field_echo(field):
    return {"m": field.m, "d_E": field.d_E, "w": field.w, "h": field.h, "mu_E": field.mu_E}


def _l_values(field, n):
    return {str(j): l_value(field, j) for j in range(1, n + 1)}


def _recheck(value, *factors, what="value"):
    got = prod(Fraction(f) for f in factors)
    if got != value:
        raise ConsistencyError(f"factors of {what} recombine to {got}, document says {value}")


# --- commands ---------------------------------------------------------------------------

def cmd_mass(args):
    field = parse_field(args)
    gram = parse_gram(args.gram, field)
    n, w = gram.n, field.w
    mass = massform.mass_lattice(field, gram)
    kappas = massform.kappa_map(field, gram)
    s = 0 if n % 2 else n // 2
    sign_power = Fraction((-1) ** s * 2, 2 ** (n + w))
    lprod = prod(_l_values(field, n).values())
    _recheck(mass, sign_power, lprod, *kappas.values(), what="mass")
    return {
        "command": "mass",
        "field": _field_echo(field),
        "gram": gram.to_json(),
        "factors": {"sign_power": sign_power, "l_values": _l_values(field, n), "l_product": lprod, "kappa": kappas},
        "mass": mass,
    }


def _choice(field, p, args, r, s):
    behavior = hermlocal.splitting_behavior(field, p)
    if behavior.is_ramified:
        raise DomainError(f"p = {p} ramifies in {field.label()}")
    t = args.t if args.t is not None else 0
    return massform.ParahoricChoice(behavior, t if behavior is Splitting.INERT else 0)


def cmd_inner_mass(args):
    field = parse_field(args)
    r, s = parse_signature(args.signature)
    gram = _gram_or_identity(args, field, r + s)
    n = gram.n
    choice = _choice(field, args.prime, args, r, s)
    value = massform.mass_inner(field, gram, args.prime, choice, r, s)
    eps = massform.epsilon(n, field.w)
    lprod = prod(_l_values(field, n).values())
    kappas = massform.kappa_map(field, gram)
    lam = massform.lambda_parahoric(args.prime, choice, n, r, s)
    tau = massform.tau(n, field.w)
    lattice = massform.mass_lattice(field, gram)
    _recheck(value, eps, lprod, *kappas.values(), lam, what="inner mass")
    _recheck(value, tau, lattice, lam, what="inner mass (via lattice mass)")
    doc = {
        "command": "inner-mass",
        "field": _field_echo(field),
        "gram": gram.to_json(),
        "input": {"r": r, "s": s, "p": args.prime, "behavior": choice.behavior.value, "t": choice.t},
        "factors": {
            "epsilon": eps, "l_values": _l_values(field, n), "l_product": lprod, "kappa": kappas,
            "lambda_p": lam, "tau": tau, "mass_lattice": lattice,
        },
        "mass_inner": value,
    }
    if args.level is not None:
        count = massform.class_count_inner(field, gram, args.prime, choice, r, s, args.level)
        idx = massform.level_index(field, n, args.level)
        _recheck(count, idx, value, what="class count")
        doc["input"]["N"] = args.level
        doc["factors"]["level_index"] = idx
        doc["class_count"] = count
    return doc


def _report_doc(inp, report):
    return {
        "level_index": report.level_index,
        "epsilon": report.epsilon,
        "l_values": _l_values(inp.field, inp.n),
        "l_product": report.l_product,
        "kappa": report.kappas,
        "lambda_bas": report.lambda_bas,
        "lambda_e": report.lambda_e,
        "rho_bas": report.rho_bas,
    }


def _input_echo(inp):
    return {"r": inp.r, "s": inp.s, "p": inp.p, "N": inp.N, "behavior": inp.behavior.value}


def cmd_basic_locus(args):
    inp = _shimura_input(args)
    report = shimcount.count_basic(inp, pi0_index=args.pi0_index)
    common = report.common_factor
    _recheck(report.irr_basic, common, report.lambda_bas, report.rho_bas, what="irr_basic")
    _recheck(report.card_Me, common, report.lambda_e, what="card_Me")
    doc = {
        "command": "basic-locus",
        "field": _field_echo(inp.field),
        "gram": inp.gram.to_json(),
        "input": _input_echo(inp),
        "factors": _report_doc(inp, report),
        "irr_basic": report.irr_basic,
        "card_Me": report.card_Me,
        "superbasic": report.superbasic,
    }
    for key in ("pi0_sh", "pi0_basic", "per_component_irr", "per_component_Me"):
        value = getattr(report, key)
        if value is not None:
            doc[key] = value
    return doc


def cmd_eo_strata(args):
    inp = _shimura_input(args)
    ts = [args.t] if args.t is not None else list(range(1, inp.n + 1, 2))
    counts = {str(t): shimcount.count_eo_closure(inp, t) for t in ts}
    report = shimcount.count_basic(inp)
    lambdas = {str(t): massform.lambda_inert(inp.p, inp.n, t) for t in ts}
    for t in ts:
        _recheck(counts[str(t)], report.common_factor, lambdas[str(t)], what=f"EO closure t={t}")
    factors = _report_doc(inp, report)
    factors["lambda_t"] = lambdas
    return {
        "command": "eo-strata",
        "field": _field_echo(inp.field),
        "gram": inp.gram.to_json(),
        "input": _input_echo(inp),
        "factors": factors,
        "closure_components": counts,
    }


def cmd_pi0(args):
    field = parse_field(args)
    r, s = parse_signature(args.signature)
    gram = _gram_or_identity(args, field, r + s)
    level = "principal" if args.index is not None else "full"
    value = shimcount.pi0_shimura(field, gram, r, s, level=level, index_override=args.index)
    return {
        "command": "pi0",
        "field": _field_echo(field),
        "gram": gram.to_json(),
        "input": {"r": r, "s": s, "level": level, "index": args.index},
        "pi0": value,
    }


def cmd_adlv(args):
    behavior = Splitting(args.behavior)
    closed = shimcount.adlv_orbit_count(behavior, args.n, args.r)
    doc = {"command": "adlv", "input": {"n": args.n, "r": args.r, "behavior": behavior.value}, "orbits": closed}
    if args.enumerate:
        doc["enumerated"] = shimcount.adlv_orbit_enumerate(args.n, args.r, behavior, cap=args.cap)
        if doc["enumerated"] != closed:
            raise ConsistencyError(f"enumeration gives {doc['enumerated']}, closed form {closed}")
    return doc


def cmd_fermat(args):
    value = shimcount.fermat_count(args.q, args.n)
    doc = {"command": "fermat", "input": {"q": args.q, "n": args.n}, "points": value}
    if args.brute_force:
        doc["enumerated"] = shimcount.fermat_brute_force(args.q, args.n, cap=args.cap)
        if doc["enumerated"] != value:
            raise ConsistencyError(f"enumeration gives {doc['enumerated']}, closed form {value}")
    return doc


def cmd_hecke_bound(args):
    inp = _shimura_input(args)
    report = shimcount.count_basic(inp)
    nu = shimcount.hecke_nu(inp.p, inp.behavior, inp.r, inp.s)
    bound = shimcount.hecke_bound(inp)
    _recheck(bound, report.common_factor, report.lambda_e, nu, what="Hecke bound")
    factors = _report_doc(inp, report)
    factors["nu_p"] = nu
    return {
        "command": "hecke-bound",
        "field": _field_echo(inp.field),
        "gram": inp.gram.to_json(),
        "input": _input_echo(inp),
        "factors": factors,
        "card_Me": report.card_Me,
        "bound": bound,
    }


def cmd_local_density(args):
    field = parse_field(args)
    gram = parse_gram(args.gram, field)
    profile = hermlocal.local_profile(gram, field, args.prime)
    value = hermlocal.local_density(profile, gram.n, args.prime)
    doc = {
        "command": "local-density",
        "field": _field_echo(field),
        "gram": gram.to_json(),
        "profile": {
            "prime": profile.prime,
            "behavior": profile.behavior.value,
            "norm_type": profile.norm_type.value,
            "det_matches_sign": profile.det_matches_sign,
        },
        "density": value,
    }
    if args.precision is not None:
        found = hermlocal.brute_force_density(gram, field, args.prime, args.precision, cap=args.cap)
        doc["enumerated"] = {"precision": args.precision, "density": found}
    return doc


def cmd_verify(args):
    cap = args.cap if args.cap is not None else verification.VERIFY_DEFAULT_CAP
    results = verification.run_checks(cap=cap, only=args.only)
    statuses = {r.status for r in results}
    overall = "fail" if "fail" in statuses else ("skipped" if statuses <= {"skipped"} else "pass")
    return {"command": "verify", "cap": cap, "checks": [r.as_dict() for r in results], "status": overall}


COMMANDS = {
    "mass": cmd_mass,
    "inner-mass": cmd_inner_mass,
    "basic-locus": cmd_basic_locus,
    "eo-strata": cmd_eo_strata,
    "pi0": cmd_pi0,
    "adlv": cmd_adlv,
    "fermat": cmd_fermat,
    "hecke-bound": cmd_hecke_bound,
    "local-density": cmd_local_density,
    "verify": cmd_verify,
}


# --- output ------------------------------------------------------------------------------

def to_jsonable(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def render_json(doc):
    return json.dumps(to_jsonable(doc), sort_keys=True, indent=2)


def _flatten(prefix, value, rows):
    if isinstance(value, dict) and value:
        for k in sorted(value, key=str):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, json.dumps(to_jsonable(value)) if isinstance(value, (list, dict)) else str(to_jsonable(value))))


def render_table(doc):
    rows = []
    _flatten("", doc, rows)
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


# --- argument parser -------------------------------------------------------------------

def _add_field(p):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--disc", type=int, help="fundamental discriminant d_E < 0")
    group.add_argument("--m", type=int, help="squarefree m < 0 with E = Q(sqrt m)")


def _add_shimura(p, gram_help="Gram matrix (default identity of rank r+s)"):
    _add_field(p)
    p.add_argument("--signature", required=True, help="r,s")
    p.add_argument("--prime", type=int, required=True, help="odd prime p unramified in E")
    p.add_argument("--level", type=int, required=True, help="level N >= 3 prime to p * d_E")
    p.add_argument("--gram", help=gram_help)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="artifact",
        description="Exact masses and component counts for unimodular Hermitian lattices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--cap", type=int, help=f"enumeration cap in candidates (else ${CAP_ENV})")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("mass", parents=[common], help="mass of a unimodular lattice")
    _add_field(p)
    p.add_argument("--gram", required=True, help="identity:n, H^k, diag:a,b,..., JSON or file")

    p = sub.add_parser("inner-mass", parents=[common], help="mass and class count of the inner form")
    _add_field(p)
    p.add_argument("--signature", required=True, help="r,s")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--t", type=int, help="index of the parahoric L_t when p is inert (default 0)")
    p.add_argument("--level", type=int, help="also report the class count at level N")
    p.add_argument("--gram")

    p = sub.add_parser("basic-locus", parents=[common], help="components of the basic locus")
    _add_shimura(p)
    p.add_argument("--pi0-index", type=int, help="index [D(Z^) : nu(K(N))] for connected components")

    p = sub.add_parser("eo-strata", parents=[common], help="EO closures for signature (1, n-1), p inert")
    _add_shimura(p)
    p.add_argument("--t", type=int, help="odd t (default: every odd t <= n)")

    p = sub.add_parser("pi0", parents=[common], help="connected components of the Shimura variety")
    _add_field(p)
    p.add_argument("--signature", required=True)
    p.add_argument("--gram")
    p.add_argument("--index", type=int, help="principal level: the index [D(Z^) : nu(K(N))]")

    p = sub.add_parser("adlv", parents=[common], help="orbits of ADLV irreducible components")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--behavior", choices=("inert", "split"), default="inert")
    p.add_argument("--enumerate", action="store_true", help="also enumerate coweights")

    p = sub.add_parser("fermat", parents=[common], help="points of a Fermat hypersurface over F_{q^2}")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--brute-force", action="store_true")

    p = sub.add_parser("hecke-bound", parents=[common], help="bound on mod p Hecke eigensystems")
    _add_shimura(p)

    p = sub.add_parser("local-density", parents=[common], help="local profile and density at a prime")
    _add_field(p)
    p.add_argument("--gram", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--precision", type=int, help="also count over O_E / l^N")

    p = sub.add_parser("verify", parents=[common], help="run the oracle-versus-formula checks")
    p.add_argument("--only", action="append", help="run checks whose name contains this text")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = COMMANDS[args.command](args)
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except UnsupportedInput as exc:
        print(f"unsupported input: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ArtifactError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = render_table(doc) if args.format == "table" else render_json(doc)
    print(out)
    if args.command == "verify" and doc["status"] == "fail":
        return EXIT_MISMATCH
    return EXIT_OK
