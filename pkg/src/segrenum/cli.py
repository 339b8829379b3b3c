"""Batch command-line interface.

One command per invocation; reports are deterministic JSON on stdout.
Exit codes: 0 success, 1 error, 2 a criterion evaluated to false.
Seeds default to a fixed constant so CI runs reproduce bit-for-bit;
`--seed` (or the document's [options] block) overrides.  The only
environment input is SEGRENUM_LOG for stderr verbosity.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from .criteria import (
    closure_battery,
    minkowski_check,
    power_equivalence_probe,
    product_formula_check,
    rees_test,
    teissier_criterion,
)
from .equising import FunctionGerm, whitney_battery
from .errors import PreconditionError, SegrenumError
from .groebner import ENGINE_STATS, Ideal, clear_caches
from .multiplicity import DEFAULT_N_MAX
from .parser import parse_input
from .report import (
    dump_report,
    jnum,
    jseq,
    make_report,
    mixed_payload,
    profile_payload,
)
from .rings import format_polynomial
from .segre import (
    DEFAULT_SEED,
    GenericityConfig,
    chain_condition,
    make_germ,
    mixed_segre,
    polar_chain,
)
from .surface import SurfaceResolutionData, e2_from_orders, lemma32_verify, negdef_check, total_transform

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FALSE = 2

_DEFAULT_OPTIONS = {
    "seed": DEFAULT_SEED,
    "bound": 997,
    "rounds": 2,
    "nmax": DEFAULT_N_MAX,
}


def _log(message):
    if os.environ.get("SEGRENUM_LOG", "").lower() in {"debug", "info"}:
        print(message, file=sys.stderr)


def _load_document(path):
    text = Path(path).read_text(encoding="utf-8")
    return parse_input(text)


def _merge_options(doc, args):
    options = dict(_DEFAULT_OPTIONS)
    options.update(doc.options)
    for key in ("seed", "bound", "rounds", "nmax"):
        value = getattr(args, key, None)
        if value is not None:
            options[key] = value
    return options


def _config(options):
    return GenericityConfig(
        seed=options["seed"],
        coefficient_bound=options["bound"],
        verification_rounds=options["rounds"],
        n_max=options["nmax"],
    )


def _germ(doc):
    if doc.ring is None:
        raise PreconditionError("document has no ring declaration")
    ambient = Ideal(doc.ring, doc.ambient)
    return make_germ(doc.ring, ambient)


def _named_ideal(doc, name):
    if name not in doc.ideals:
        raise PreconditionError(f"no ideal named {name!r} in the document")
    return Ideal(doc.ring, doc.ideals[name])


def _inputs_echo(doc, path, names):
    echo = {"file": Path(path).name}
    if doc.ring is not None:
        echo["ring"] = list(doc.ring.variable_names)
        if doc.ambient:
            echo["ambient"] = [format_polynomial(p) for p in doc.ambient]
        echo["ideals"] = {
            name: [format_polynomial(p) for p in doc.ideals[name]]
            for name in names
            if name in doc.ideals
        }
    return echo


# -- command handlers ---------------------------------------------------------

def _cmd_segre(doc, args, cfg):
    germ = _germ(doc)
    chain = polar_chain(germ, _named_ideal(doc, args.ideal), cfg)
    results = {
        "ideal": args.ideal,
        "n": jnum(germ.n),
        "e": jseq(chain.e),
        "m": jseq(chain.m),
        "polar_ideals": [
            [format_polynomial(g) for g in s.polar_ideal.generators] or ["0"]
            for s in chain.stages
        ],
        "certified": chain.certified,
    }
    return results, None, chain.seeds_used, EXIT_OK


def _cmd_mixed(doc, args, cfg):
    germ = _germ(doc)
    value = mixed_segre(
        germ,
        _named_ideal(doc, args.ideal1),
        _named_ideal(doc, args.ideal2),
        args.k, args.i, args.j, cfg,
    )
    results = {
        "k": jnum(args.k),
        "i": jnum(args.i),
        "j": jnum(args.j),
        "value": jnum(value),
    }
    return results, None, (cfg.seed,), EXIT_OK


def _cmd_compare(doc, args, cfg):
    germ = _germ(doc)
    I1 = _named_ideal(doc, args.ideal1)
    I2 = _named_ideal(doc, args.ideal2)
    if args.powers:
        a, b = args.powers
        report = power_equivalence_probe(germ, I1, I2, a, b, cfg)
    else:
        report = closure_battery(germ, I1, I2, cfg)
    results = {
        "left": profile_payload(report.left_profile),
        "right": profile_payload(report.right_profile),
        "mixed": mixed_payload(report.mixed),
        "holds": report.holds,
    }
    if args.powers:
        results["powers"] = jseq(args.powers)
    return results, report.verdicts, (cfg.seed,), EXIT_OK if report.holds else EXIT_FALSE


def _cmd_teissier(doc, args, cfg):
    germ = _germ(doc)
    report = teissier_criterion(
        germ, _named_ideal(doc, args.ideal1), _named_ideal(doc, args.ideal2), cfg
    )
    results = {
        "labels": list(report.values["labels"]),
        "chain": jseq(report.values["chain"]),
        "holds": report.holds,
    }
    return results, report.verdicts, (cfg.seed,), EXIT_OK if report.holds else EXIT_FALSE


def _cmd_rees(doc, args, cfg):
    germ = _germ(doc)
    report = rees_test(
        germ, _named_ideal(doc, args.ideal1), _named_ideal(doc, args.ideal2), cfg
    )
    results = {
        "left": profile_payload(report.left_profile),
        "right": profile_payload(report.right_profile),
        "equivalent": report.holds,
    }
    return results, report.verdicts, (cfg.seed,), EXIT_OK if report.holds else EXIT_FALSE


def _cmd_product_check(doc, args, cfg):
    germ = _germ(doc)
    k = args.k if args.k is not None else germ.n
    res = product_formula_check(
        germ, _named_ideal(doc, args.ideal1), _named_ideal(doc, args.ideal2), k, cfg
    )
    results = {
        "k": jnum(res.k),
        "lhs": jnum(res.lhs),
        "terms": jseq(res.terms),
        "binomial_sum": jnum(res.binomial_sum),
        "plain_sum": jnum(res.plain_sum),
        "hypothesis_met": res.hypothesis_met,
        "verdict": res.verdict,
    }
    code = EXIT_OK if res.verdict != "neither" else EXIT_FALSE
    return results, None, (cfg.seed,), code


def _cmd_minkowski(doc, args, cfg):
    germ = _germ(doc)
    k = args.k if args.k is not None else germ.n
    res = minkowski_check(
        germ, _named_ideal(doc, args.ideal1), _named_ideal(doc, args.ideal2), k, cfg
    )
    results = {
        "k": jnum(res.k),
        "product_number": jnum(res.product_number),
        "left_number": jnum(res.left_number),
        "right_number": jnum(res.right_number),
        "comparison": res.comparison,
        "holds": res.holds,
        "hypothesis_met": res.hypothesis_met,
    }
    return results, None, (cfg.seed,), EXIT_OK if res.holds else EXIT_FALSE


def _cmd_chain(doc, args, cfg):
    germ = _germ(doc)
    holds = chain_condition(germ, _named_ideal(doc, args.ideal), cfg)
    return {"chain_condition": holds}, None, (cfg.seed,), EXIT_OK if holds else EXIT_FALSE


def _cmd_surface(doc, args, cfg):
    if doc.surface is None:
        raise PreconditionError("document has no [surface] block")
    block = doc.surface
    results = {"negative_definite": negdef_check(block.matrix)}
    data = SurfaceResolutionData(block.matrix, block.u, block.v, block.w)
    orders = e2_from_orders(data)
    results["e2_I1"] = jnum(orders.e2_I1)
    results["e2_I2"] = jnum(orders.e2_I2)
    results["e2_mixed"] = jnum(orders.e2_mixed)
    results["mixed_inequality_holds"] = orders.inequality_holds
    gram = tuple(tuple(-x for x in row) for row in block.matrix)
    lemma = lemma32_verify(gram, block.u, block.v, block.w)
    results["lemma32"] = {
        "hypothesis_ok": lemma.hypothesis_ok,
        "conclusion_holds": lemma.conclusion_holds,
        "lhs": jnum(lemma.lhs),
        "rhs": jnum(lemma.rhs),
        "w_is_zero": lemma.w_is_zero,
    }
    if block.c is not None:
        results["total_transform"] = jseq(total_transform(block.matrix, block.c))
    return results, None, (), EXIT_OK


def _cmd_whitney(doc, args, cfg, second_doc=None):
    if second_doc is not None:
        ring = doc.ring
        if second_doc.ring != ring:
            raise PreconditionError("the two documents declare different rings")
        gens0 = next(iter(doc.ideals.values()), doc.ambient)
        gens1 = next(iter(second_doc.ideals.values()), second_doc.ambient)
        if len(gens0) != 1 or len(gens1) != 1:
            raise PreconditionError("each germ file needs a single-generator ideal")
        f0, f1 = FunctionGerm(gens0[0]), FunctionGerm(gens1[0])
    else:
        for name in (args.germ0, args.germ1):
            if name not in doc.ideals:
                raise PreconditionError(f"no ideal named {name!r} in the document")
            if len(doc.ideals[name]) != 1:
                raise PreconditionError(f"germ {name!r} must have a single generator")
        f0 = FunctionGerm(doc.ideals[args.germ0][0])
        f1 = FunctionGerm(doc.ideals[args.germ1][0])
    report = whitney_battery(f0, f1, cfg)
    results = {
        "whitney_sufficient": report.holds,
        "tangent_ideal_0": [
            format_polynomial(g) for g in report.values["tangent_ideal_0"].generators
        ],
        "tangent_ideal_1": [
            format_polynomial(g) for g in report.values["tangent_ideal_1"].generators
        ],
        "left": profile_payload(report.left_profile),
        "right": profile_payload(report.right_profile),
        "mixed": mixed_payload(report.mixed),
    }
    return results, report.verdicts, (cfg.seed,), EXIT_OK if report.holds else EXIT_FALSE


_HANDLERS = {
    "segre": _cmd_segre,
    "mixed": _cmd_mixed,
    "compare": _cmd_compare,
    "teissier": _cmd_teissier,
    "rees": _cmd_rees,
    "product-check": _cmd_product_check,
    "minkowski": _cmd_minkowski,
    "chain": _cmd_chain,
    "surface": _cmd_surface,
    "whitney": _cmd_whitney,
}


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=None, help="override the genericity seed")
    sub.add_argument("--bound", type=int, default=None, help="coefficient bound")
    sub.add_argument("--rounds", type=int, default=None, help="verification rounds")
    sub.add_argument("--nmax", type=int, default=None, help="Hilbert-Samuel sample budget")
    sub.add_argument("--timing", action="store_true", help="attach wall-clock timing")


def build_arg_parser():
    parser = argparse.ArgumentParser(
        prog="segrenum",
        description="Exact Segre numbers and integral-closure criteria at the origin.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segre", help="Segre numbers e_k and polar multiplicities m_k")
    p.add_argument("file")
    p.add_argument("ideal")
    _add_common(p)

    p = sub.add_parser("mixed", help="one mixed Segre number e_k^(i,j)")
    p.add_argument("file")
    p.add_argument("ideal1")
    p.add_argument("ideal2")
    p.add_argument("k", type=int)
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    _add_common(p)

    for name, extra in (
        ("compare", "equality battery for coinciding integral closures"),
        ("teissier", "mixed-multiplicity chain for m-primary ideals"),
        ("rees", "profile comparison for nested ideals"),
        ("product-check", "product formula for e_k(I1*I2)"),
        ("minkowski", "Minkowski-type root inequality"),
    ):
        p = sub.add_parser(name, help=extra)
        p.add_argument("file")
        p.add_argument("ideal1")
        p.add_argument("ideal2")
        if name == "compare":
            p.add_argument("--powers", type=int, nargs=2, metavar=("A", "B"),
                           help="probe the battery on I1^A against I2^B")
        if name in {"product-check", "minkowski"}:
            p.add_argument("--k", type=int, default=None, help="codimension (default n)")
        _add_common(p)

    p = sub.add_parser("chain", help="Segre-cycle support chain condition")
    p.add_argument("file")
    p.add_argument("ideal")
    _add_common(p)

    p = sub.add_parser("surface", help="intersection-form checks on a [surface] block")
    p.add_argument("file")
    _add_common(p)

    p = sub.add_parser("whitney", help="Whitney-family battery for two germs")
    p.add_argument("file")
    p.add_argument("germ0")
    p.add_argument("germ1", nargs="?", default=None)
    _add_common(p)

    return parser


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    started = time.monotonic()
    clear_caches()
    ENGINE_STATS.reset()
    try:
        second_doc = None
        if args.command == "whitney" and args.germ1 is None:
            # two-file form: whitney f0.poly f1.poly
            doc = _load_document(args.file)
            second_doc = _load_document(args.germ0)
            names = []
        else:
            doc = _load_document(args.file)
            names = [
                getattr(args, key)
                for key in ("ideal", "ideal1", "ideal2", "germ0", "germ1")
                if getattr(args, key, None)
            ]
        options = _merge_options(doc, args)
        cfg = _config(options)
        handler = _HANDLERS[args.command]
        if args.command == "whitney":
            results, verdicts, seeds, code = handler(doc, args, cfg, second_doc=second_doc)
        else:
            results, verdicts, seeds, code = handler(doc, args, cfg)
        timing = (time.monotonic() - started) * 1000 if args.timing else None
        report = make_report(
            command=args.command,
            inputs=_inputs_echo(doc, args.file, names),
            options=options,
            seeds=seeds,
            results=results,
            verdicts=verdicts,
            engine=ENGINE_STATS.snapshot(),
            timing_ms=timing,
        )
        sys.stdout.write(dump_report(report))
        _log(f"{args.command}: exit {code}")
        return code
    except SegrenumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
