"""Command-line front end: machine files, reports, and exit-code contracts.

Exit codes: 0 success, 1 usage error, 2 computation error (bad input data,
violated preconditions), 3 budget exhausted without a certificate.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from fractions import Fraction

from . import iota as iota_mod
from .binstr import is_prefix_free, parse_bits, render_bits
from .complexity import (
    NO_WITNESS,
    ComplexityOracle,
    ExecutableMachine,
)
from .egyptian import (
    ExpansionOverflow,
    KraftViolation,
    egyptian_floor,
    grid_walk,
    kraft_chaitin,
)
from .machines import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    Builtin,
    Construction,
    FiniteTable,
    MachineSpec,
    MachineSpecError,
    classify,
    density_statistic,
    fresh_index,
    omega_enclosure,
    sanity_chain,
    validate_spec,
    zeta_enclosure,
)
from .numerics import Enclosure, digits as digit_extract, parse_rational
from .spectral import kappa, kappa_natural, omega_s, zeta_s

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_BUDGET = 3


class MachineFileError(ValueError):
    """Machine description rejected, with the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# ---------------------------------------------------------------------------
# machine description files


class _Block:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.kind: str | None = None
        self.domain: list[str] = []
        self.maps: dict[str, str] = {}
        self.generator: str | None = None
        self.extras: tuple[str, ...] = ()
        self.construct: str | None = None
        self.operand_names: list[str] = []
        self.bounds: list[Fraction] = []
        self.check_prefix_free = False


def _bits_token(token: str, line: int) -> str:
    try:
        return parse_bits(token)
    except ValueError as exc:
        raise MachineFileError(line, str(exc)) from None


def _finish_block(block: _Block, known: dict[str, MachineSpec]) -> MachineSpec:
    if block.kind is None:
        raise MachineFileError(block.line, f"machine {block.name!r} has no kind")
    if block.kind == "finite":
        if block.check_prefix_free and not is_prefix_free(block.domain):
            raise MachineFileError(
                block.line, f"machine {block.name!r} domain is not prefix-free"
            )
        outputs = None
        if block.maps:
            outputs = tuple(block.maps.get(w) for w in block.domain)
        return FiniteTable(tuple(block.domain), outputs)
    if block.kind == "builtin":
        if block.generator is None:
            raise MachineFileError(block.line, "builtin block needs a generator")
        return Builtin(block.generator, block.extras)
    if block.construct is None:
        raise MachineFileError(block.line, "construction block needs construct")
    operands = []
    for name in block.operand_names:
        if name not in known:
            raise MachineFileError(block.line, f"unknown machine {name!r}")
        operands.append(known[name])
    return Construction(block.construct, tuple(operands), tuple(block.bounds))


def parse_machine_file(text: str) -> MachineSpec:
    """Parse a machine description; the last block is the result.

    Earlier blocks become named operands for later construction blocks.
    """
    known: dict[str, MachineSpec] = {}
    block: _Block | None = None
    last: MachineSpec | None = None

    def close() -> None:
        nonlocal block, last
        if block is not None:
            spec = _finish_block(block, known)
            known[block.name] = spec
            last = spec
            block = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0]
        if key == "machine":
            if len(tokens) != 2:
                raise MachineFileError(lineno, "machine needs exactly one name")
            close()
            if tokens[1] in known:
                raise MachineFileError(lineno, f"duplicate machine {tokens[1]!r}")
            block = _Block(tokens[1], lineno)
            continue
        if block is None:
            raise MachineFileError(lineno, "directive before any machine line")
        if key == "kind":
            if len(tokens) != 2 or tokens[1] not in (
                "finite",
                "builtin",
                "construction",
            ):
                raise MachineFileError(lineno, "kind must be finite, builtin or construction")
            if block.kind is not None:
                raise MachineFileError(lineno, "duplicate kind line")
            block.kind = tokens[1]
        elif key == "domain":
            if len(tokens) != 2:
                raise MachineFileError(lineno, "domain needs exactly one string")
            w = _bits_token(tokens[1], lineno)
            if w in block.domain:
                raise MachineFileError(lineno, f"duplicate domain string {tokens[1]!r}")
            block.domain.append(w)
        elif key == "map":
            if len(tokens) != 4 or tokens[2] != "->":
                raise MachineFileError(lineno, "map syntax is: map BITS -> BITS")
            src = _bits_token(tokens[1], lineno)
            dst = _bits_token(tokens[3], lineno)
            if src not in block.domain:
                raise MachineFileError(lineno, f"map source {tokens[1]!r} not in domain")
            if src in block.maps:
                raise MachineFileError(lineno, f"duplicate map for {tokens[1]!r}")
            block.maps[src] = dst
        elif key == "generator":
            if block.generator is not None:
                raise MachineFileError(lineno, "duplicate generator line")
            if len(tokens) < 2:
                raise MachineFileError(lineno, "generator needs a name")
            block.generator = tokens[1]
            if tokens[1] == "geometric":
                if len(tokens) > 3:
                    raise MachineFileError(lineno, "geometric takes one extras list")
                if len(tokens) == 3:
                    block.extras = tuple(
                        _bits_token(t, lineno) for t in tokens[2].split(",")
                    )
            elif len(tokens) != 2:
                raise MachineFileError(lineno, f"{tokens[1]} takes no arguments")
        elif key == "construct":
            if block.construct is not None:
                raise MachineFileError(lineno, "duplicate construct line")
            if len(tokens) != 3:
                raise MachineFileError(lineno, "construct syntax is: construct KIND NAMES")
            block.construct = tokens[1]
            block.operand_names = tokens[2].split(",")
        elif key == "bound":
            if len(tokens) != 2:
                raise MachineFileError(lineno, "bound needs one rational")
            try:
                block.bounds.append(parse_rational(tokens[1]))
            except ValueError as exc:
                raise MachineFileError(lineno, str(exc)) from None
        elif key == "prefix_free":
            if len(tokens) != 1:
                raise MachineFileError(lineno, "prefix_free takes no arguments")
            block.check_prefix_free = True
        else:
            raise MachineFileError(lineno, f"unknown directive {key!r}")
    close()
    if last is None:
        raise MachineFileError(1, "no machine block found")
    validate_spec(last)
    return last


# ---------------------------------------------------------------------------
# rendering


def _frac(x: Fraction | None) -> str:
    return "inf" if x is None else str(x)


def _decimal_common(e: Enclosure, places: int = 12) -> str:
    """Decimal digits shared by every value in the enclosure."""
    if e.hi is None:
        return ""
    scale = 10 ** places
    a = (e.lo.numerator * scale) // e.lo.denominator
    b = (e.hi.numerator * scale) // e.hi.denominator
    sa = f"{a:0{places + 1}d}"
    sb = f"{b:0{places + 1}d}"
    shared = 0
    while shared < len(sa) and shared < len(sb) and sa[shared] == sb[shared]:
        shared += 1
    if len(sa) != len(sb) or shared <= len(sa) - places:
        return ""  # not even the integer part is pinned down
    head = sa[: len(sa) - places] or "0"
    tail = sa[len(sa) - places : shared]
    return head + ("." + tail if tail else "")


def _emit(header: list[str], rows: list[list[str]], fmt: str) -> None:
    if fmt == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(row))
        return
    table = [header] + rows
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _enclosure_report(label: str, e: Enclosure, args) -> None:
    if e.hi is None:
        cert = "lower-bound"
    elif e.lo == e.hi:
        cert = "exact"
    else:
        cert = "interval"
    _emit(
        ["quantity", "lo", "hi", "decimal", "certified", "budget"],
        [[label, _frac(e.lo), _frac(e.hi), _decimal_common(e), cert, str(args.budget)]],
        args.format,
    )
    if args.digits is not None:
        print(_digit_line(e, args.digits))


def _digit_line(e: Enclosure, count: int) -> str:
    if e.hi is None:
        return "digits= determined=0"
    whole = e.lo.numerator // e.lo.denominator
    if e.hi - whole > 1:
        return "digits= determined=0"
    r = digit_extract(e.shift(-whole), count)
    return f"digits={whole}.{r.digits} determined={r.determined}"


# ---------------------------------------------------------------------------
# argument plumbing


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _machine_from(args) -> MachineSpec:
    if not args.machine:
        raise ValueError("this command needs --machine FILE")
    with open(args.machine, encoding="utf-8") as fh:
        return parse_machine_file(fh.read())


def _executable_from(args) -> ExecutableMachine:
    spec = _machine_from(args)
    if isinstance(spec, Builtin) and spec.generator == "iota":
        spec = dataclasses.replace(
            spec, step_budget=args.steps, size_budget=args.size_budget
        )
    return ExecutableMachine(spec)


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--digits", type=int, default=None)
    common.add_argument("--format", choices=("table", "csv"), default="table")
    common.add_argument("--machine", default=None)
    common.add_argument("-s", dest="s", default=None)
    common.add_argument("--steps", type=int, default=iota_mod.DEFAULT_STEP_BUDGET)
    common.add_argument(
        "--size-budget", type=int, default=iota_mod.DEFAULT_SIZE_BUDGET
    )

    top = _Parser(prog="tuatara", parents=[common])
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, **kwargs) -> _Parser:
        return sub.add_parser(name, parents=[common], **kwargs)

    add("zeta")
    add("omega")
    add("classify")
    add("zeta-s")
    add("omega-s")
    add("kappa")
    add("kappa-natural")
    p = add("egyptian")
    p.add_argument("q")
    p.add_argument("--floor", type=int, default=2)
    p = add("kraft")
    p.add_argument("lengths", type=int, nargs="+")
    p = add("grid")
    p.add_argument("ms", type=int, nargs="+")
    p = add("fresh-index")
    p.add_argument("y")
    p = add("density")
    p.add_argument("n", type=int)
    add("sanity")
    p = add("nabla")
    p.add_argument("x")
    p = add("complexity")
    p.add_argument("x")
    p.add_argument("--kind", choices=("plain", "prefix", "nabla-log"), default="plain")
    p = add("deficiency")
    p.add_argument("prefix_digits")
    p.add_argument("--kind", choices=("plain", "prefix", "nabla-log"), default="plain")

    iota_p = add("iota")
    iota_sub = iota_p.add_subparsers(dest="iota_command", required=True, parser_class=_Parser)

    def add_iota(name: str) -> _Parser:
        return iota_sub.add_parser(name, parents=[common])

    add_iota("parse").add_argument("bits")
    add_iota("run").add_argument("bits")
    add_iota("encode").add_argument("bits")
    add_iota("decode").add_argument("bits")
    add_iota("count").add_argument("length", type=int)
    add_iota("zeta").add_argument("n", type=int)
    return top


# ---------------------------------------------------------------------------
# subcommand bodies


def _render_term(t) -> str:
    if isinstance(t, iota_mod.Atom):
        return "i" if t is iota_mod.IOTA else t.name
    return f"({_render_term(t.f)} {_render_term(t.x)})"


def _cmd_iota(args) -> int:
    cmd = args.iota_command
    if cmd == "parse":
        term = iota_mod.parse(parse_bits(args.bits))
        print(_render_term(term))
        return EXIT_OK
    if cmd == "run":
        r = iota_mod.run_program(parse_bits(args.bits), args.steps, args.size_budget)
        if not r.halted:
            print(
                f"no normal form: {r.status} budget hit after {r.steps} step(s)",
                file=sys.stderr,
            )
            return EXIT_BUDGET
        print(iota_mod.unparse(r.term))
        return EXIT_OK
    if cmd == "encode":
        print(iota_mod.encode_bits(parse_bits(args.bits)))
        return EXIT_OK
    if cmd == "decode":
        out = iota_mod.decode_bits(parse_bits(args.bits), args.steps, args.size_budget)
        print(render_bits(out))
        return EXIT_OK
    if cmd == "count":
        if args.length < 0:
            raise ValueError("length must be >= 0")
        print(iota_mod.count_programs(args.length))
        return EXIT_OK
    e = iota_mod.iota_zeta_partial(args.n)
    _enclosure_report(f"iota-zeta[{args.n}]", e, args)
    return EXIT_OK


def _parse_s(args, default: str | None = None) -> Fraction:
    text = args.s if args.s is not None else default
    if text is None:
        raise ValueError("this command needs -s RATIONAL")
    return parse_rational(text)


def _cmd_classify(args) -> int:
    outcome = classify(_machine_from(args), args.budget)
    rows = []
    for label, v in (("zeta", outcome.zeta), ("omega", outcome.omega)):
        rows.append(
            [
                label,
                v.kind,
                "yes" if v.certified else "no",
                _frac(v.enclosure.lo),
                _frac(v.enclosure.hi),
                v.witness,
            ]
        )
    _emit(["sum", "verdict", "certified", "lo", "hi", "notes"], rows, args.format)
    if not (outcome.zeta.certified and outcome.omega.certified):
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_deficiency(args) -> int:
    machine = _executable_from(args)
    kind = args.kind.replace("-", "_")
    oracle = ComplexityOracle(kind, machine)
    from .complexity import deficiency as deficiency_fn

    report = deficiency_fn(
        parse_bits(args.prefix_digits), _parse_s(args, "1"), oracle, args.budget
    )
    rows = []
    for r in report.rows:
        c = "none" if r.complexity is NO_WITNESS else str(r.complexity)
        slack = "" if r.slack is None else str(r.slack)
        rows.append([str(r.m), c, str(r.threshold), slack])
    _emit(["m", "complexity", "threshold", "slack"], rows, args.format)
    print(f"worst_slack={'none' if report.worst_slack is None else report.worst_slack}")
    if report.nabla_rows:
        _emit(
            ["n", "index", "statistic"],
            [[str(r.n), str(r.index), str(r.statistic)] for r in report.nabla_rows],
            args.format,
        )
    return EXIT_OK


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "zeta":
        _enclosure_report("zeta", zeta_enclosure(_machine_from(args), args.budget), args)
        return EXIT_OK
    if cmd == "omega":
        _enclosure_report("omega", omega_enclosure(_machine_from(args), args.budget), args)
        return EXIT_OK
    if cmd == "classify":
        return _cmd_classify(args)
    if cmd == "zeta-s":
        s = _parse_s(args)
        _enclosure_report(f"zeta[s={s}]", zeta_s(_machine_from(args), s, args.budget), args)
        return EXIT_OK
    if cmd == "omega-s":
        s = _parse_s(args)
        _enclosure_report(f"omega[s={s}]", omega_s(_machine_from(args), s, args.budget), args)
        return EXIT_OK
    if cmd == "kappa":
        s = _parse_s(args)
        _enclosure_report(f"kappa[s={s}]", kappa(_machine_from(args), s, args.budget), args)
        return EXIT_OK
    if cmd == "kappa-natural":
        s = _parse_s(args)
        _enclosure_report(
            f"kappa-natural[s={s}]",
            kappa_natural(_machine_from(args), s, args.budget),
            args,
        )
        return EXIT_OK
    if cmd == "egyptian":
        q = parse_rational(args.q)
        # the budget caps greedy denominator bits; unbudgeted runs can outgrow memory
        denoms = egyptian_floor(q, args.floor, bit_budget=args.budget)
        print(" + ".join(f"1/{d}" for d in denoms))
        return EXIT_OK
    if cmd == "kraft":
        words = kraft_chaitin(args.lengths)
        rows = [
            [str(i + 1), str(n), render_bits(w)]
            for i, (n, w) in enumerate(zip(args.lengths, words))
        ]
        _emit(["index", "length", "word"], rows, args.format)
        return EXIT_OK
    if cmd == "grid":
        rows = [
            [str(t.d), str(t.row), str(t.col), str(t.term)]
            for t in grid_walk(args.ms, args.budget)
        ]
        _emit(["diagonal", "row", "col", "term"], rows, args.format)
        return EXIT_OK
    if cmd == "fresh-index":
        result = fresh_index(_machine_from(args), parse_bits(args.y), args.budget)
        print(render_bits(result))
        return EXIT_OK
    if cmd == "density":
        value = density_statistic(_machine_from(args), args.n)
        e = Enclosure.exact(value)
        _emit(
            ["n", "value", "decimal"],
            [[str(args.n), str(value), _decimal_common(e)]],
            args.format,
        )
        return EXIT_OK
    if cmd == "sanity":
        spec = _machine_from(args)
        if not isinstance(spec, FiniteTable):
            raise ValueError("sanity needs a finite table machine")
        rep = sanity_chain(spec)
        _emit(
            ["quantity", "value"],
            [
                ["omega", str(rep.omega)],
                ["zeta", str(rep.zeta)],
                ["chain_holds", "yes" if rep.holds else "no"],
                ["strict", "yes" if rep.strict else "no"],
            ],
            args.format,
        )
        return EXIT_OK
    if cmd == "nabla":
        from .complexity import nabla as nabla_fn

        value = nabla_fn(_executable_from(args), parse_bits(args.x), args.budget)
        if value is NO_WITNESS:
            print("no witness within budget", file=sys.stderr)
            return EXIT_BUDGET
        print(value)
        return EXIT_OK
    if cmd == "complexity":
        machine = _executable_from(args)
        oracle = ComplexityOracle(args.kind.replace("-", "_"), machine)
        value = oracle.value(parse_bits(args.x), args.budget)
        if value is NO_WITNESS:
            print("no witness within budget", file=sys.stderr)
            return EXIT_BUDGET
        print(value)
        return EXIT_OK
    if cmd == "deficiency":
        return _cmd_deficiency(args)
    if cmd == "iota":
        return _cmd_iota(args)
    raise AssertionError(f"unhandled command {cmd!r}")


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except iota_mod.DecodeBudget as exc:
        print(f"error: reduction {exc} budget exhausted mid-decode", file=sys.stderr)
        return EXIT_BUDGET
    except ExpansionOverflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (
        MachineFileError,
        MachineSpecError,
        KraftViolation,
        iota_mod.ParseFailure,
        iota_mod.MalformedList,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def entry() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    entry()
