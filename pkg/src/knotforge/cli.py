"""Command-line front end.

Subcommands: alexander, zeros, criterion, signature, deform, batch.
Machine output is JSON (sorted keys, stable float repr), so identical flags
and seed reproduce byte-identical output.  Exit codes: 0 success, 2 bad
knot/Seifert input, 3 even constant term, 4 no irreducible path found,
1 anything else.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import catalog as _catalog
from .braid import BraidWord, alexander_from_braid, presentation
from .circle_zeros import (criterion_odd_order, has_odd_order_unit_zero,
                           km_holds_at, km_inequality, unit_circle_zeros)
from .errors import (EvenConstantTerm, KnotForgeError, NoConvergence,
                     NotAKnot, NotSeifert, NotSeifertConsistent,
                     StuckReducible)
from .exactiv import start_bits
from .invariants import (SeifertMatrix, alexander_from_seifert,
                         knot_determinant, lt_signature, mod4_criterion,
                         murasugi_signature, signature_profile)
from .laurent import LaurentPoly, PalindromicForm, conway_normalize, to_palindromic
from .repspace import deform

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EVEN_CONSTANT = 3
EXIT_NO_PATH = 4


def _read_config(path):
    """Flat key=value lines; blank lines and # comments ignored."""
    out = {}
    with open(path) as fh:
        for ln, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{ln}: expected key=value")
            key, val = line.split("=", 1)
            out[key.strip()] = val.strip()
    return out


def _apply_config(args):
    if getattr(args, "config", None):
        cfg = _read_config(args.config)
        if "precision_bits" in cfg:
            os.environ["KNOTFORGE_PRECISION_BITS"] = cfg["precision_bits"]
        if "seed" in cfg and getattr(args, "seed", None) == 0:
            args.seed = int(cfg["seed"])


def _add_input_args(p, coeffs=False):
    p.add_argument("--braid", help="braid word, e.g. '1 1 1' or 's1 s1 s1'")
    p.add_argument("--strands", type=int, help="strand count for --braid")
    p.add_argument("--seifert", help="Seifert matrix as a JSON array of arrays")
    p.add_argument("--knot", help="bundled catalog knot name")
    if coeffs:
        p.add_argument("--coeffs", help="palindromic coefficients a_0,a_1,...,a_d")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _record_from_args(args):
    """Resolve the input to (braid | None, seifert | None, pinned_alexander | None)."""
    if args.knot:
        rec = _catalog.bundled_record(args.knot)
        return rec.braid, rec.seifert, rec.pinned_alexander
    braid = seifert = None
    if args.braid is not None:
        if not args.strands:
            raise ValueError("--braid requires --strands")
        braid = BraidWord.parse(args.braid, args.strands)
    if args.seifert is not None:
        seifert = SeifertMatrix.from_rows(json.loads(args.seifert))
    if braid is None and seifert is None:
        raise ValueError("provide --braid/--strands, --seifert, or --knot")
    return braid, seifert, None


def _alexander_of(args):
    braid, seifert, pinned = _record_from_args(args)
    if braid is not None:
        return alexander_from_braid(braid)
    if seifert is not None:
        return alexander_from_seifert(seifert)
    return pinned


def _palindromic_of(args) -> PalindromicForm:
    if getattr(args, "coeffs", None):
        coeffs = tuple(int(c) for c in args.coeffs.replace(",", " ").split())
        return PalindromicForm(coeffs)
    return to_palindromic(conway_normalize(_alexander_of(args)))


def _emit(args, payload, human):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def cmd_alexander(args) -> int:
    delta = _alexander_of(args)
    payload = {"alexander": delta.format(), "coefficients": delta.to_pairs()}
    _emit(args, payload, delta.format())
    return EXIT_OK


def cmd_zeros(args) -> int:
    form = _palindromic_of(args)
    report = unit_circle_zeros(form)
    payload = report.to_json_dict(start_bits())
    odd = [r for r in report.roots if r.parity == "odd"]
    lines = [f"{len(report.roots)} unit-circle zero pair(s); "
             f"{len(odd)} of odd order; at t=1: {report.at_two}, at t=-1: {report.at_minus_two}"]
    for r in report.roots:
        lo, hi = r.interval
        lines.append(f"  x in ({float(lo):.10f}, {float(hi):.10f})  "
                     f"multiplicity {r.multiplicity} ({r.parity})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_criterion(args) -> int:
    form = _palindromic_of(args)
    verdict = km_inequality(form)
    criterion = criterion_odd_order(form)  # raises EvenConstantTerm for even a_0
    detected, witness = has_odd_order_unit_zero(form)
    consistent = (not criterion) or detected
    payload = {
        "criterion": criterion,
        "witness_j": verdict.witness_j,
        "strict": verdict.strict,
        "detector": detected,
        "detector_witness": [str(witness[0]), str(witness[1])] if witness else None,
        "consistent": consistent,
    }
    human = (f"criterion: {'holds' if criterion else 'silent'}"
             + (f" (witness j = {verdict.witness_j})" if verdict.witness_j else "")
             + f"; detector: {'odd-order unit zero found' if detected else 'none found'}"
             + ("" if consistent else "; INCONSISTENT"))
    _emit(args, payload, human)
    return EXIT_OK if consistent else 1


def _parse_angle_pi(text):
    """Angle spec as multiples of pi: 'pi', 'pi/3', '2pi/5', or a float in radians."""
    t = text.strip().lower().replace(" ", "")
    if t == "pi":
        return Fraction(1)
    if "pi" in t:
        head, _, tail = t.partition("pi")
        num = Fraction(head) if head not in ("", "+", "-") else Fraction(f"{head}1")
        if tail.startswith("/"):
            num /= int(tail[1:])
        elif tail:
            raise ValueError(f"bad angle {text!r}")
        return num
    return Fraction(float(t)) / Fraction(math.pi)


def cmd_signature(args) -> int:
    _, seifert, _ = _record_from_args(args)
    if seifert is None:
        raise NotSeifert("signature needs a Seifert matrix input")
    if args.at is not None:
        alpha_pi = _parse_angle_pi(args.at)
        value = lt_signature(seifert, alpha_pi, start_bits())
        _emit(args, {"angle_over_pi": str(alpha_pi), "signature": value}, str(value))
        return EXIT_OK
    profile = signature_profile(seifert, args.samples, start_bits())
    if args.json:
        print(json.dumps(profile.to_json_dict(), sort_keys=True))
    else:
        sys.stdout.write(profile.to_csv())
        jumps = profile.to_json_dict()["jumps"]
        sys.stdout.write(json.dumps({"jumps": jumps}, sort_keys=True) + "\n")
    return EXIT_OK


def _theta0_auto(form: PalindromicForm) -> float:
    report = unit_circle_zeros(form, refine_bits=48)
    odd = report.odd_roots()
    if not odd:
        raise NoConvergence(1)
    # smallest angle = largest x; the zero sits at e^{i*alpha}, theta0 = alpha/2
    best = max(odd, key=lambda r: r.interval[0])
    mid = (best.interval[0] + best.interval[1]) / 2
    return math.acos(float(mid) / 2.0) / 2.0


def cmd_deform(args) -> int:
    braid, _, _ = _record_from_args(args)
    if braid is None:
        raise NotAKnot("deform needs a braid input")
    pres = presentation(braid)
    if not pres.is_knot:
        raise NotAKnot(f"closure has {pres.components} components")
    if args.theta0 == "auto":
        form = to_palindromic(alexander_from_braid(braid))
        try:
            theta0 = _theta0_auto(form)
        except NoConvergence:
            print("no odd-order unit-circle zero: no deformation angle", file=sys.stderr)
            return EXIT_NO_PATH
    else:
        theta0 = float(args.theta0)
    sides = [args.side] if args.side != "auto" else ["upper", "lower"]
    path = None
    failure = None
    for side in sides:
        try:
            path = deform(pres, theta0, side, args.flavor,
                          steps=args.steps, step_size=args.step_size,
                          seed=args.seed)
            break
        except (NoConvergence, StuckReducible) as exc:
            failure = exc
            partial = getattr(exc, "partial", None)
            if partial is not None and len(partial) > 0:
                path = partial
                break
    if path is None or len(path) == 0:
        print(f"no irreducible path found ({type(failure).__name__})", file=sys.stderr)
        return EXIT_NO_PATH
    payload = path.to_json_dict()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"{len(path)} accepted points, tau in "
              f"[{path.points[0].tau!r}, {path.points[-1].tau!r}], "
              f"min margin {float(min(path.margins))!r}")
    return EXIT_OK


def _batch_one(rec):
    out = {"name": rec.name}
    mismatches = []
    delta_braid = delta_seifert = None
    if rec.braid is not None:
        try:
            delta_braid = alexander_from_braid(rec.braid)
        except NotAKnot as exc:
            out["braid_error"] = str(exc)
    if rec.seifert is not None:
        delta_seifert = alexander_from_seifert(rec.seifert)
    if delta_braid is not None and delta_seifert is not None:
        out["routes_agree"] = delta_braid == delta_seifert
        if not out["routes_agree"]:
            mismatches.append("braid and Seifert Alexander polynomials differ")
    delta = delta_braid if delta_braid is not None else delta_seifert
    if delta is None and rec.pinned_alexander is not None:
        delta = rec.pinned_alexander
    if delta is not None:
        out["alexander"] = delta.format()
        det = abs(delta.eval_exact(-1))
        out["det"] = det
        if rec.pinned_alexander is not None and delta != rec.pinned_alexander:
            mismatches.append("alexander differs from pinned")
        if rec.pinned_det is not None and det != rec.pinned_det:
            mismatches.append(f"det {det} != pinned {rec.pinned_det}")
    if rec.seifert is not None:
        sgn = murasugi_signature(rec.seifert)
        out["sgn"] = sgn
        det_v = knot_determinant(rec.seifert)
        out["odd_zero_guaranteed"] = mod4_criterion(det_v, sgn)
        if out["odd_zero_guaranteed"]:
            out["note"] = "odd-order zero guaranteed (det = 3 mod 4)"
        if rec.pinned_sgn is not None and sgn != rec.pinned_sgn:
            mismatches.append(f"sgn {sgn} != pinned {rec.pinned_sgn}")
    elif rec.pinned_sgn is not None and delta is not None:
        out["sgn"] = rec.pinned_sgn
        out["odd_zero_guaranteed"] = mod4_criterion(out["det"], rec.pinned_sgn)
        if out["odd_zero_guaranteed"]:
            out["note"] = "odd-order zero guaranteed (det = 3 mod 4)"
    if delta is not None:
        form = to_palindromic(conway_normalize(delta))
        if form.a[0] % 2:
            out["criterion"] = criterion_odd_order(form)
        detected, _ = has_odd_order_unit_zero(form)
        out["odd_order_unit_zero"] = detected
    out["mismatches"] = mismatches
    return out


def cmd_batch(args) -> int:
    try:
        if args.catalog == "bundled":
            records = _catalog.bundled_catalog()
        else:
            with open(args.catalog) as fh:
                records = _catalog.load_records(fh.read())
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"catalog parse error: {exc}", file=sys.stderr)
        return 1
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        results = list(pool.map(_batch_one, records))
    summary = {
        "records": results,
        "total": len(results),
        "mismatches": sum(len(r["mismatches"]) for r in results),
    }
    text = json.dumps(summary, sort_keys=True, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if summary["mismatches"] == 0 else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="knotforge",
        description="Knot invariants, unit-circle zero analysis, and "
                    "representation deformation")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("alexander", help="Alexander polynomial from braid or Seifert input")
    _add_input_args(pa)
    pa.set_defaults(func=cmd_alexander)

    pz = sub.add_parser("zeros", help="exact unit-circle zero report")
    _add_input_args(pz, coeffs=True)
    pz.set_defaults(func=cmd_zeros)

    pc = sub.add_parser("criterion", help="coefficient criterion for an odd-order unit zero")
    _add_input_args(pc, coeffs=True)
    pc.set_defaults(func=cmd_criterion)

    ps = sub.add_parser("signature", help="Levine-Tristram signature profile")
    _add_input_args(ps)
    ps.add_argument("--samples", type=int, default=360)
    ps.add_argument("--at", help="single angle, e.g. 'pi' or 'pi/3' or radians")
    ps.set_defaults(func=cmd_signature)

    pd = sub.add_parser("deform", help="deform the abelian representation at an odd zero")
    _add_input_args(pd)
    pd.add_argument("--theta0", default="auto")
    pd.add_argument("--side", choices=["upper", "lower", "auto"], default="auto")
    pd.add_argument("--flavor", choices=["SL2R", "SU2"], default="SL2R")
    pd.add_argument("--steps", type=int, default=20)
    pd.add_argument("--step-size", type=float, default=2.5e-3, dest="step_size")
    pd.add_argument("--seed", type=int, default=0)
    pd.add_argument("--out", help="write the path JSON here")
    pd.set_defaults(func=cmd_deform)

    pb = sub.add_parser("batch", help="run invariants over a catalog file")
    pb.add_argument("catalog", help="path to a JSON record array, or 'bundled'")
    pb.add_argument("--out", help="write the summary JSON here")
    pb.add_argument("--workers", type=int, default=4)
    pb.add_argument("--config", help="key=value config file")
    pb.set_defaults(func=cmd_batch)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except (NotAKnot, NotSeifert, NotSeifertConsistent) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EvenConstantTerm as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVEN_CONSTANT
    except (ValueError, json.JSONDecodeError, KnotForgeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
