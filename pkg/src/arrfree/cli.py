"""Command-line frontend: input files, pretty tables and JSON reports.

Input grammar (line oriented, ``#`` starts a comment):

    vars x y z
    hyperplane x + y - z        # arrangement files
    gen x^2                     # ideal files (one power product per line)

Expressions use ``^`` for powers; ``*`` is optional between factors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import arrangement as arr
from .arrangement import (Arrangement, ArrangementError, ExponentVector,
                          FreenessReport, analyze, check_conjecture_Z,
                          realizable_as_free, supersolvable_from_exponents)
from .gin import GenericityExhaustedError, GinCertificate, GinConfig, rgin
from .groebner import DegreeCapExceeded
from .monomial import (INFINITE, MonomialIdeal, SectionalMatrix,
                       StronglyStableIdeal, betti_eliahou_kervaire,
                       reduction_number, regularity_stable, sectional_matrix)
from .polyring import (Polynomial, PowerProduct, format_power_product,
                       var_names, _is_prime)

__all__ = [
    "ParseError", "InputDocument", "parse_input", "parse_expression",
    "report_to_dict", "report_from_dict", "render_sectional_matrix",
    "main",
]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_COMPUTE = 3


class ParseError(ValueError):
    """Input rejected, with a line/column anchor."""

    def __init__(self, message: str, source: str = "<input>",
                 line: int = 0, col: int = 0):
        super().__init__(f"{source}:{line}:{col}: {message}")
        self.source = source
        self.line = line
        self.col = col
        self.message = message


# ---------------------------------------------------------------------------
# expression parsing
# ---------------------------------------------------------------------------

_OPS = set("+-*^()")


def _tokenize(text: str, names: Sequence[str], source: str, line: int) -> List[tuple]:
    """Tokens: ("num", int, col), ("name", index, col), (op, None, col)."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch in _OPS:
            tokens.append((ch, None, col))
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), col))
            i = j
        elif ch.isalpha() or ch == "_":
            match = None
            for idx, name in enumerate(names):
                if text.startswith(name, i) and (match is None or len(name) > len(names[match])):
                    match = idx
            if match is None:
                raise ParseError(f"unknown variable starting at {text[i:i+8]!r}",
                                 source, line, col)
            tokens.append(("name", match, col))
            i += len(names[match])
        else:
            raise ParseError(f"unexpected character {ch!r}", source, line, col)
    return tokens


class _ExprParser:
    def __init__(self, tokens: List[tuple], nvars: int, source: str, line: int):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars
        self.source = source
        self.line = line

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _error(self, message: str):
        tok = self._peek()
        col = tok[2] if tok else (self.tokens[-1][2] if self.tokens else 1)
        raise ParseError(message, self.source, self.line, col)

    def parse(self) -> Polynomial:
        poly = self._expr()
        if self._peek() is not None:
            self._error(f"unexpected trailing {self._peek()[0]!r}")
        return poly

    def _expr(self) -> Polynomial:
        sign = 1
        tok = self._peek()
        if tok and tok[0] in "+-":
            self.pos += 1
            sign = -1 if tok[0] == "-" else 1
        poly = self._term().scale(sign)
        while True:
            tok = self._peek()
            if tok is None or tok[0] not in "+-":
                break
            self.pos += 1
            rhs = self._term()
            poly = poly + rhs if tok[0] == "+" else poly - rhs
        return poly

    def _term(self) -> Polynomial:
        poly = self._factor()
        while True:
            tok = self._peek()
            if tok is None:
                break
            if tok[0] == "*":
                self.pos += 1
                poly = poly * self._factor()
            elif tok[0] in ("num", "name", "("):
                poly = poly * self._factor()   # implicit multiplication
            else:
                break
        return poly

    def _factor(self) -> Polynomial:
        base = self._atom()
        tok = self._peek()
        if tok and tok[0] == "^":
            self.pos += 1
            etok = self._peek()
            if etok is None or etok[0] != "num":
                self._error("exponent must be a non-negative integer")
            self.pos += 1
            return base ** etok[1]
        return base

    def _atom(self) -> Polynomial:
        tok = self._peek()
        if tok is None:
            self._error("unexpected end of expression")
        kind, value, _ = tok
        if kind == "num":
            self.pos += 1
            return Polynomial.constant(value, self.nvars)
        if kind == "name":
            self.pos += 1
            return Polynomial.variable(value + 1, self.nvars)
        if kind == "(":
            self.pos += 1
            inner = self._expr()
            closing = self._peek()
            if closing is None or closing[0] != ")":
                self._error("missing closing parenthesis")
            self.pos += 1
            return inner
        self._error(f"unexpected {kind!r}")


def parse_expression(text: str, names: Sequence[str], source: str = "<input>",
                     line: int = 1) -> Polynomial:
    """Parse one polynomial expression over the declared variables."""
    tokens = _tokenize(text, names, source, line)
    if not tokens:
        raise ParseError("empty expression", source, line, 1)
    return _ExprParser(tokens, len(names), source, line).parse()


# ---------------------------------------------------------------------------
# input documents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InputDocument:
    kind: str                    # "arrangement" or "ideal"
    var_names: Tuple[str, ...]
    items: Tuple[Polynomial, ...]
    source: str

    def as_arrangement(self) -> Arrangement:
        if self.kind != "arrangement":
            raise ParseError("expected an arrangement file (hyperplane lines)",
                             self.source)
        return Arrangement(self.items)

    def as_monomial_ideal(self) -> MonomialIdeal:
        if self.kind != "ideal":
            raise ParseError("expected an ideal file (gen lines)", self.source)
        return MonomialIdeal(
            (f.leading_power_product() for f in self.items), len(self.var_names))


def parse_input(text: str, source: str = "<input>") -> InputDocument:
    """Parse an arrangement or ideal file."""
    names: Optional[List[str]] = None
    kind: Optional[str] = None
    items: List[Polynomial] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split(None, 1)
        keyword = fields[0]
        rest = fields[1] if len(fields) > 1 else ""
        if keyword == "vars":
            if names is not None:
                raise ParseError("duplicate vars line", source, lineno, 1)
            names = rest.split()
            if not names:
                raise ParseError("vars line declares no variables", source, lineno, 1)
            if len(set(names)) != len(names):
                raise ParseError("variable names must be unique", source, lineno, 1)
            for name in names:
                if not (name[0].isalpha() or name[0] == "_") or \
                        not all(c.isalnum() or c == "_" for c in name):
                    raise ParseError(f"bad variable name {name!r}", source, lineno, 1)
            continue
        if keyword in ("hyperplane", "gen"):
            if names is None:
                raise ParseError("vars line must come first", source, lineno, 1)
            this_kind = "arrangement" if keyword == "hyperplane" else "ideal"
            if kind is None:
                kind = this_kind
            elif kind != this_kind:
                raise ParseError("cannot mix hyperplane and gen lines",
                                 source, lineno, 1)
            poly = parse_expression(rest, names, source, lineno)
            if keyword == "hyperplane":
                if poly.is_zero or not poly.is_homogeneous() or poly.total_degree() != 1:
                    raise ParseError(f"hyperplane form must be linear homogeneous, "
                                     f"got {poly}", source, lineno, 1)
            else:
                if poly.is_zero or len(poly) != 1:
                    raise ParseError(f"ideal generator must be a single monomial, "
                                     f"got {poly}", source, lineno, 1)
            items.append(poly)
            continue
        raise ParseError(f"unknown directive {keyword!r}", source, lineno, 1)
    if names is None:
        raise ParseError("missing vars line", source)
    if kind is None or not items:
        raise ParseError("no hyperplane or gen lines", source)
    return InputDocument(kind=kind, var_names=tuple(names),
                         items=tuple(items), source=source)


def load_input(path: str) -> InputDocument:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read input: {exc}", path)
    return parse_input(text, source=path)


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def _ideal_strings(B: MonomialIdeal) -> List[str]:
    return [format_power_product(g) for g in B.generators]


def report_to_dict(report: FreenessReport) -> dict:
    betti = None
    if report.betti is not None:
        betti = {"b0": {str(k): v for k, v in report.betti.beta0.items()},
                 "b1": {str(k): v for k, v in report.betti.beta1.items()}}
    return {
        "free": report.free,
        "method": report.method,
        "n": report.n,
        "l": report.l,
        "essential": report.essential,
        "rgin": _ideal_strings(report.rgin),
        "exponents": list(report.exponents) if report.exponents is not None else None,
        "d0": report.d0,
        "regularity": report.regularity,
        "sectional_matrix": [list(row) for row in report.sectional.values],
        "betti": betti,
        "provenance": report.provenance.as_dict() if report.provenance else None,
    }


def _parse_monomial(text: str, l: int) -> PowerProduct:
    poly = parse_expression(text, var_names(l))
    if len(poly) != 1 or poly.leading_coefficient() != 1:
        raise ParseError(f"not a monomial: {text!r}")
    return poly.leading_power_product()


def report_from_dict(data: dict) -> FreenessReport:
    """Rebuild a report from its JSON form.

    The sectional matrix and Betti table are pure functions of the rgin, so
    they are recomputed and checked against the serialized rows.
    """
    l = data["l"]
    cert = None
    if data.get("provenance"):
        prov = data["provenance"]
        cert = GinCertificate(
            seed=prov["seed"], trials=prov["trials"],
            coeff_mode=prov["coeff_mode"],
            matrices=tuple(tuple(tuple(row) for row in m)
                           for m in prov["matrices"]))
    B = StronglyStableIdeal((_parse_monomial(s, l) for s in data["rgin"]), l,
                            certificate=cert)
    dmax = len(data["sectional_matrix"][0]) - 1
    M = sectional_matrix(B, dmax)
    if [list(row) for row in M.values] != data["sectional_matrix"]:
        raise ParseError("sectional matrix does not match its rgin")
    betti = None
    if data.get("betti") is not None:
        betti = betti_eliahou_kervaire(B)
        if {str(k): v for k, v in betti.beta0.items()} != data["betti"]["b0"] or \
                {str(k): v for k, v in betti.beta1.items()} != data["betti"]["b1"]:
            raise ParseError("betti table does not match its rgin")
    exponents = None
    if data.get("exponents") is not None:
        exponents = ExponentVector(data["exponents"])
    return FreenessReport(
        free=data["free"], method=data["method"], n=data["n"], l=l,
        essential=data["essential"], rgin=B, sectional=M,
        d0=data["d0"], regularity=data["regularity"],
        exponents=exponents, betti=betti, provenance=cert)


# ---------------------------------------------------------------------------
# pretty printing
# ---------------------------------------------------------------------------

def render_sectional_matrix(M: SectionalMatrix, d0: Optional[int] = None) -> str:
    """ASCII table; the d0 column is bracketed and triangle-equality
    failures are marked with '!'."""
    failures = set()
    for i in range(2, M.nrows + 1):
        for d in range(1, M.dmax + 1):
            if M.m(i, d) != M.m(i - 1, d) + M.m(i, d - 1):
                failures.add((i, d))
    header = ["d:"] + [f"[{d}]" if d == d0 else str(d) for d in range(M.dmax + 1)]
    rows = [header]
    for i in range(1, M.nrows + 1):
        cells = [f"i={i}:"]
        for d in range(M.dmax + 1):
            text = str(M.m(i, d))
            if (i, d) in failures:
                text = "!" + text
            cells.append(text)
        rows.append(cells)
    widths = [max(len(row[c]) for row in rows) for c in range(len(header))]
    lines = []
    for row in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines)


def _print_report(report: FreenessReport, out) -> None:
    verdict = "FREE" if report.free else "NOT FREE"
    if report.trivially_free:
        verdict += " (trivially: rgin is the whole ring)"
    print(f"verdict   : {verdict}", file=out)
    print(f"method    : {report.method}", file=out)
    print(f"n, l      : {report.n}, {report.l}", file=out)
    print(f"essential : {report.essential}", file=out)
    print(f"rgin      : <{', '.join(_ideal_strings(report.rgin))}>", file=out)
    if report.exponents is not None:
        print(f"exponents : {tuple(report.exponents)}", file=out)
    if report.d0 is not None:
        print(f"d0        : {report.d0}", file=out)
    if report.regularity is not None:
        print(f"regularity: {report.regularity}", file=out)
    if report.betti is not None:
        b0 = ", ".join(f"b0[{j}]={v}" for j, v in report.betti.beta0.items())
        b1 = ", ".join(f"b1[{j}]={v}" for j, v in report.betti.beta1.items())
        print(f"betti     : {b0}; {b1}", file=out)
    print("sectional matrix:", file=out)
    print(render_sectional_matrix(report.sectional, report.d0), file=out)
    if report.provenance is not None:
        print(f"provenance: seed={report.provenance.seed} "
              f"trials={report.provenance.trials} "
              f"coeff={report.provenance.coeff_mode}", file=out)


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_coeff(text: str) -> Tuple[str, Tuple[int, int]]:
    if text == "exact":
        return "exact", (32003, 32009)
    if text.startswith("mod:"):
        try:
            primes = [int(p) for p in text[4:].split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad prime list in {text!r}")
        if len(primes) == 1:
            p2 = primes[0] + 2
            while not _is_prime(p2):
                p2 += 1 if p2 % 2 == 0 else 2
            primes.append(p2)
        if len(primes) != 2 or primes[0] == primes[1] \
                or not all(_is_prime(p) for p in primes):
            raise argparse.ArgumentTypeError(
                "expected mod:<p> or mod:<p>,<p2> with distinct primes")
        return "modular", (primes[0], primes[1])
    raise argparse.ArgumentTypeError(f"unknown coefficient mode {text!r}")


def _config_from_args(args) -> GinConfig:
    mode, primes = args.coeff
    return GinConfig(seed=args.seed, trials=args.trials,
                     entry_bound=args.entry_bound, mode=mode, primes=primes)


def _exponent_list(text: str) -> ExponentVector:
    try:
        return ExponentVector(int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _cmd_analyze(args, out) -> int:
    doc = load_input(args.input)
    A = doc.as_arrangement()
    report = analyze(A, _config_from_args(args), method=args.method,
                     dmax=args.dmax)
    if args.json:
        print(json.dumps(report_to_dict(report), indent=2), file=out)
    else:
        _print_report(report, out)
    return EXIT_OK


def _rgin_of_document(doc: InputDocument, cfg: GinConfig) -> StronglyStableIdeal:
    if doc.kind == "arrangement":
        return rgin(arr.jacobian_ideal(doc.as_arrangement()), cfg)
    ideal = doc.as_monomial_ideal()
    gens = [Polynomial.monomial(pp, ideal.nvars) for pp in ideal.generators]
    return rgin(gens, cfg)


def _cmd_rgin(args, out) -> int:
    doc = load_input(args.input)
    B = _rgin_of_document(doc, _config_from_args(args))
    if args.json:
        print(json.dumps(
            {"rgin": _ideal_strings(B),
             "provenance": B.certificate.as_dict() if B.certificate else None},
            indent=2), file=out)
    else:
        print(f"rgin: <{', '.join(_ideal_strings(B)) or '0'}>", file=out)
    return EXIT_OK


def _document_d0(B: StronglyStableIdeal) -> Optional[int]:
    if B.is_unit or B.nvars < 2:
        return None
    r = reduction_number(B, B.nvars - 2)
    return None if r is INFINITE else r


def _cmd_sm(args, out) -> int:
    doc = load_input(args.input)
    B = _rgin_of_document(doc, _config_from_args(args))
    d0 = _document_d0(B)
    dmax = args.dmax
    if dmax is None:
        reg = regularity_stable(B) if not B.is_zero else 0
        dmax = reg + 2
        if d0 is not None:
            dmax = max(dmax, d0 + 2)
    M = sectional_matrix(B, dmax)
    if args.json:
        print(json.dumps({"rgin": _ideal_strings(B), "d0": d0,
                          "sectional_matrix": [list(row) for row in M.values]},
                         indent=2), file=out)
    else:
        print(render_sectional_matrix(M, d0), file=out)
    return EXIT_OK


def _cmd_exponents(args, out) -> int:
    doc = load_input(args.input)
    if doc.kind == "arrangement":
        report = analyze(doc.as_arrangement(), _config_from_args(args),
                         method="rgin")
        free, exps = report.free, report.exponents
    else:
        B = StronglyStableIdeal.from_ideal(doc.as_monomial_ideal())
        free, exps = True, arr.exponents_from_rgin(B)
    if args.json:
        print(json.dumps({"free": free,
                          "exponents": list(exps) if exps else None},
                         indent=2), file=out)
    elif not free:
        print("not free: no exponents", file=out)
    elif exps is None:
        print("free but not essential: exponents not extracted", file=out)
    else:
        print(f"exponents: {tuple(exps)}", file=out)
    return EXIT_OK


def _cmd_construct(args, out) -> int:
    exps = args.exponents
    if args.dim is not None and args.dim != len(exps):
        raise ParseError(f"--dim {args.dim} does not match "
                         f"{len(exps)} exponents")
    A = supersolvable_from_exponents(exps)
    if args.json:
        print(json.dumps({"exponents": list(exps), "n": A.n, "l": A.l,
                          "forms": [str(f) for f in A.forms]},
                         indent=2), file=out)
    else:
        print(f"vars {' '.join(var_names(A.l))}", file=out)
        for f in A.forms:
            print(f"hyperplane {f}", file=out)
    return EXIT_OK


def _cmd_realize(args, out) -> int:
    doc = load_input(args.input)
    B = StronglyStableIdeal.from_ideal(doc.as_monomial_ideal())
    verdict = realizable_as_free(B, _config_from_args(args),
                                 verify=not args.no_verify)
    if args.json:
        print(json.dumps(
            {"realizable": verdict.realizable, "reason": verdict.reason,
             "exponents": list(verdict.exponents) if verdict.exponents else None,
             "forms": [str(f) for f in verdict.arrangement.forms]
             if verdict.arrangement else None,
             "verified": verdict.verified}, indent=2), file=out)
    elif verdict.realizable:
        print(f"YES: exponents {tuple(verdict.exponents)}"
              + (" (rgin verified)" if verdict.verified else ""), file=out)
        for f in verdict.arrangement.forms:
            print(f"hyperplane {f}", file=out)
    else:
        print(f"NO: {verdict.reason}", file=out)
    return EXIT_OK


def _cmd_conjecture(args, out) -> int:
    doc = load_input(args.input)
    B = StronglyStableIdeal.from_ideal(doc.as_monomial_ideal())
    result = check_conjecture_Z(B)
    if args.json:
        print(json.dumps(
            {"holds": result.holds, "d0": result.d0,
             "violations": [format_power_product(g) for g in result.violations],
             "vacuous": result.vacuous}, indent=2), file=out)
    else:
        status = "holds" if result.holds else "fails"
        extra = " (vacuously)" if result.vacuous and result.holds else ""
        print(f"conjecture {status}{extra}; d0 = {result.d0}", file=out)
        for g in result.violations:
            print(f"violating generator: {format_power_product(g)} "
                  f"(degree {g.degree()} < {result.d0 + 1})", file=out)
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="arrfree",
                     description="Freeness of central hyperplane arrangements "
                                 "via generic initial ideals and sectional matrices.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=1,
                        help="seed of the randomized coordinate changes")
    common.add_argument("--trials", type=int, default=2,
                        help="number of agreeing random trials required")
    common.add_argument("--entry-bound", type=int, default=10,
                        help="random matrix entries are drawn from [-b, b]")
    common.add_argument("--coeff", type=_parse_coeff,
                        default=("exact", (32003, 32009)),
                        help="coefficient mode: exact or mod:<p>[,<p2>]")
    common.add_argument("--json", action="store_true",
                        help="emit a machine-readable JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common],
                       help="full freeness report for an arrangement file")
    p.add_argument("input")
    p.add_argument("--method", choices=("rgin", "sectional", "both"),
                   default="both")
    p.add_argument("--dmax", type=int, default=None,
                   help="largest displayed degree of the sectional matrix")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("rgin", parents=[common],
                       help="generic initial ideal of an arrangement Jacobian "
                            "ideal or of a monomial ideal")
    p.add_argument("input")
    p.set_defaults(func=_cmd_rgin)

    p = sub.add_parser("sm", parents=[common], help="sectional matrix")
    p.add_argument("input")
    p.add_argument("--dmax", type=int, default=None,
                   help="largest displayed degree")
    p.set_defaults(func=_cmd_sm)

    p = sub.add_parser("exponents", parents=[common],
                       help="exponents of a free arrangement or of a "
                            "lex-segment ideal")
    p.add_argument("input")
    p.set_defaults(func=_cmd_exponents)

    p = sub.add_parser("construct", parents=[common],
                       help="free arrangement with prescribed exponents")
    p.add_argument("--exponents", required=True, type=_exponent_list,
                   help="comma separated, e.g. 1,2,4")
    p.add_argument("--dim", type=int, default=None)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("realize", parents=[common],
                       help="decide whether an ideal is the rgin of a free "
                            "arrangement Jacobian ideal")
    p.add_argument("input")
    p.add_argument("--no-verify", action="store_true",
                   help="skip the end-to-end rgin check of the witness")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("conjecture", parents=[common],
                       help="third-variable degree bound check")
    p.add_argument("input")
    p.set_defaults(func=_cmd_conjecture)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ArrangementError, arr.NotFreeRginError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GenericityExhaustedError, DegreeCapExceeded,
            arr.InternalConsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
