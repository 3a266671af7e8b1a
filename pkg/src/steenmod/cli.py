"""Batch command-line interface.

Subcommands expose each engine layer (dims, validate, perp, chain, baer,
witness, freeness, iota) plus the built-in scenario runner.  Output is
deterministic given the flags and --seed; --format structured emits the
line-oriented machine-readable form.  Exit codes: 0 all expectations met,
1 a computed counterexample to an expectation, 2 inconclusive.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import milnor, textio
from .annihilator import (HomIdeal, chain_perp_profile, perp_ideal_in_module,
                          perp_subset_in_algebra)
from .baer import baer_test, build_witness
from .comodule import ExtendedSpec, extended, iota, validate_coaction
from .gmodule import (GradedModule, SuspensionProfile, Window, coproduct,
                      dual_regular, freeness_test, regular, validate)
from .milnor import Algebra
from .scenarios import (EXIT_CODES, ScenarioConfig, render_structured,
                        render_text, run_scenario)


def _parse_window(text: str) -> Window:
    lo, hi = text.split("..")
    return Window(int(lo), int(hi))


def _parse_subalgebra(text: str) -> Algebra:
    if text == "full":
        return Algebra.full()
    return Algebra.subalgebra(int(text))


def _load_module(args) -> GradedModule:
    spec = args.module
    if spec == "regular":
        return regular(args.subalgebra, args.window)
    if spec == "dual-regular":
        return dual_regular(args.subalgebra, args.window)
    with open(spec, "r", encoding="utf-8") as fh:
        return textio.parse_module(fh.read())


def _parse_ideal(text: str) -> HomIdeal:
    gens = [milnor.parse_element(part) for part in text.split(";") if part.strip()]
    return HomIdeal(gens)


def _emit(args, lines: list[str]) -> None:
    out = "\n".join(lines) + "\n"
    sys.stdout.write(out)


def cmd_dims(args) -> int:
    lines = []
    alg = args.subalgebra
    top = alg.top_degree()
    dmax = args.max if top is None else min(args.max, top)
    if args.format == "structured":
        lines.append("schema steenmod.report/1")
    for d in range(dmax + 1):
        basis = alg.basis(d)
        if args.format == "structured":
            lines.append(f"dim.{d} {len(basis)}")
        else:
            names = " ".join(str(milnor.Element([s])) for s in basis)
            lines.append(f"degree {d}: dim {len(basis)}  {names}")
    _emit(args, lines)
    return 0


def io_roundtrip(path: str) -> tuple[str, bool, list[str]]:
    """Parse a module or comodule file, re-print, re-parse; bit-exact check.

    Returns (kind, parse-print-parse fixpoint reached, axiom violations).
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    first = text.splitlines()[0].strip() if text.strip() else ""
    if first == textio.COMODULE_HEADER:
        com = textio.parse_comodule(text)
        bad = validate_coaction(com)
        reprint = textio.print_comodule(com)
        fixpoint = (textio.parse_comodule(reprint) == com
                    and textio.print_comodule(textio.parse_comodule(reprint))
                    == reprint)
        return "comodule", fixpoint, bad
    mod = textio.parse_module(text)
    bad = validate(mod)
    reprint = textio.print_module(mod)
    fixpoint = (textio.parse_module(reprint) == mod
                and textio.print_module(textio.parse_module(reprint)) == reprint)
    return "module", fixpoint, bad


def cmd_validate(args) -> int:
    kind, fixpoint, bad = io_roundtrip(args.file)
    lines = [f"kind: {kind}", f"violations: {len(bad)}"]
    for v in bad[:10]:
        lines.append(f"  {v}")
    lines.append(f"roundtrip: {'bit-exact' if fixpoint else 'BROKEN'}")
    _emit(args, lines)
    return 0 if fixpoint and not bad else 1


def cmd_perp(args) -> int:
    m = _load_module(args)
    lines = []
    if args.elements:
        elems = []
        for part in args.elements.split(";"):
            e = milnor.parse_element(part)
            d = e.degree()
            if d is None:
                raise SystemExit("perp elements must be nonzero homogeneous")
            elems.append((d, milnor.coords_of(e, d, m.algebra)))
        wi = perp_subset_in_algebra(elems, m)
        lines.append("algebra-degree dim certified")
        for k in range(0, wi.window.hi + 1):
            if k in wi.spaces:
                lines.append(f"{k} {wi.spaces[k].dim} yes")
            else:
                lines.append(f"{k} ? no")
    else:
        ideal = _parse_ideal(args.ideal)
        prof = perp_ideal_in_module(ideal, m)
        lines.append("degree dim certified")
        for d in prof.window:
            cert = "yes" if prof.certified[d] else "no"
            lines.append(f"{d} {prof.stages[d][0].dim} {cert}")
    _emit(args, lines)
    return 0


def cmd_chain(args) -> int:
    m = _load_module(args)
    chain = _load_chain(args.chain)
    prof = chain_perp_profile(chain, m)
    lines = [f"stages: {len(chain.stages)}",
             "degree stage-dims ell certified"]
    for d in prof.window:
        dims = "/".join(str(prof.stages[d][i].dim)
                        for i in range(prof.num_stages))
        cert = "yes" if prof.certified[d] else "no"
        note = " (moving at final stage)" if prof.ell[d] == prof.num_stages else ""
        lines.append(f"{d} {dims} {prof.ell[d]}{note} {cert}")
    _emit(args, lines)
    return 0


def _load_chain(text: str):
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            text = fh.read().strip()
    return textio.parse_chain(text)


def cmd_baer(args) -> int:
    m = _load_module(args)
    if args.shifts:
        shifts = [int(t) for t in args.shifts.split(",")]
        m = coproduct([(m, s) for s in shifts])
    ideal = _parse_ideal(args.ideal)
    v = baer_test(ideal, args.shift, m)
    lines = [f"ideal: {ideal}",
             f"shift: {args.shift}",
             f"status: {v.status}",
             f"map-space-dim: {v.hom_dim}",
             f"restriction-dim: {v.extendable_dim}",
             f"relations-complete: {v.constraints_complete}",
             f"note: {v.note}"]
    if v.witness is not None:
        for gd, vd, mask in v.witness.values:
            lines.append(f"witness-value: generator-degree {gd} "
                         f"value-degree {vd} coords {mask:x}")
    _emit(args, lines)
    return 0 if v.passed else (1 if v.status == "fails" else 2)


def cmd_witness(args) -> int:
    m = _load_module(args)
    chain = _load_chain(args.chain)
    dfun = None
    if args.degree_function:
        dfun = SuspensionProfile(int(t) for t in args.degree_function.split(","))
    wm, wv = build_witness(chain, args.shift, m, dfun)
    lines = [f"chain: {chain}",
             f"degree-function: {list(wm.degree_function.shifts)}",
             f"forced-stages: {wv.forced_stages} of {wv.num_stages}",
             f"extension-fails: {wv.extension_fails}",
             f"note: {wv.note}"]
    for n, (deg, mask) in enumerate(wm.choices):
        lines.append(f"choice {n}: degree {deg} coords {mask:x}")
    for n in sorted(wm.stage_witnesses):
        lines.append(f"destabilizer {n}: {wm.stage_witnesses[n]}")
    _emit(args, lines)
    return 0


def cmd_freeness(args) -> int:
    m = _load_module(args)
    sub = args.over if args.over is not None else args.subalgebra
    if sub.is_full:
        raise SystemExit("freeness runs over a finite subalgebra; pass --over N")
    v = freeness_test(m, sub)
    lines = [f"status: {v.status}"]
    if v.status == "free":
        lines.append("gr-injective: yes (free = injective over a finite "
                     "self-dual subalgebra, on the certified range)")
    lines.append(f"generators: {dict(sorted(v.generator_degrees.items()))}")
    if v.witness:
        lines.append(f"witness: {v.witness}")
    if v.certified_degrees:
        lines.append(f"certified: {min(v.certified_degrees)}.."
                     f"{max(v.certified_degrees)}")
    _emit(args, lines)
    return 0 if v.status == "free" else (1 if v.status == "not_free" else 2)


def cmd_iota(args) -> int:
    v_dims = {}
    for part in args.v.split(","):
        d, n = part.split(":")
        v_dims[int(d)] = int(n)
    spec = ExtendedSpec(v_dims)
    com = extended(spec, Algebra.full(), args.window)
    bad = validate_coaction(com)
    m = iota(com)
    bad_m = validate(m)
    lines = [f"v: {dict(spec.v_dims)}",
             f"comodule-dims: {[com.dims[d] for d in com.window]}",
             f"coaction-violations: {len(bad)}",
             f"module-violations: {len(bad_m)}"]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(textio.print_module(m))
        lines.append(f"module-written: {args.out}")
    _emit(args, lines)
    return 0 if not bad and not bad_m else 1


def cmd_scenario(args) -> int:
    cfg = ScenarioConfig(window=args.window, subalgebra=args.n,
                         stages=args.stages, seed=args.seed,
                         max_degree=args.max)
    rep = run_scenario(args.name, cfg)
    if args.format == "structured":
        sys.stdout.write(render_structured(rep))
    else:
        sys.stdout.write(render_text(rep))
    return EXIT_CODES[rep.status]


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for the randomized parts of catalogs")
    common.add_argument("--format", choices=["text", "structured"],
                        default="text")
    parser = argparse.ArgumentParser(
        prog="steenmod",
        description="desk-scale graded-module computations over the mod-2 "
                    "Steenrod algebra and its finite subalgebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, module=False):
        p.add_argument("--window", type=_parse_window, default=Window(0, 12),
                       help="degree window LO..HI")
        p.add_argument("--subalgebra", type=_parse_subalgebra,
                       default=Algebra.full(), help="N or 'full'")
        if module:
            p.add_argument("--module", default="regular",
                           help="'regular', 'dual-regular', or a module file")

    p = sub.add_parser("dims", parents=[common], help="basis dimensions per degree")
    p.add_argument("--max", type=int, default=24)
    p.add_argument("--subalgebra", type=_parse_subalgebra,
                   default=Algebra.full())
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("validate", parents=[common], help="parse, validate and round-trip a file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("perp", parents=[common], help="annihilator tables")
    add_common(p, module=True)
    p.add_argument("--ideal", default="Sq(1)",
                   help="generators separated by ';'")
    p.add_argument("--elements", default="",
                   help="module elements (as algebra elements of the regular "
                        "module) whose algebra annihilator is wanted")
    p.set_defaults(func=cmd_perp)

    p = sub.add_parser("chain", parents=[common], help="perp profile of an ascending chain")
    add_common(p, module=True)
    p.add_argument("--chain", required=True,
                   help="chain file or inline 'chain: [Sq(1)] ; ...'")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("baer", parents=[common], help="graded extension test")
    add_common(p, module=True)
    p.add_argument("--ideal", default="Sq(1)")
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--shifts", default="",
                   help="coproduct suspension shifts, comma separated")
    p.set_defaults(func=cmd_baer)

    p = sub.add_parser("witness", parents=[common], help="chain witness map construction")
    add_common(p, module=True)
    p.add_argument("--chain", required=True)
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--degree-function", default="",
                   help="comma-separated d(n); derived from the profile "
                        "when omitted")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("freeness", parents=[common], help="freeness / gr-injectivity test")
    add_common(p, module=True)
    p.add_argument("--over", type=_parse_subalgebra, default=None,
                   help="finite subalgebra to test over (default: the "
                        "module's own)")
    p.set_defaults(func=cmd_freeness)

    p = sub.add_parser("iota", parents=[common], help="embed an extended comodule as a module")
    add_common(p)
    p.add_argument("--v", required=True, help="graded dims like '0:1,-2:1'")
    p.add_argument("--out", default="", help="write the module file here")
    p.set_defaults(func=cmd_iota)

    p = sub.add_parser("scenario", parents=[common], help="run a built-in scenario")
    p.add_argument("name")
    p.add_argument("--window", type=_parse_window, default=None)
    p.add_argument("--n", type=int, default=None, help="subalgebra index")
    p.add_argument("--stages", type=int, default=4)
    p.add_argument("--max", type=int, default=24)
    p.set_defaults(func=cmd_scenario)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except textio.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
