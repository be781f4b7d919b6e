"""DIMACS CNF reading and writing.

The parser accepts comment lines, a `p cnf <vars> <clauses>` header, and
zero-terminated clauses that may span or share lines.  Clause-count mismatches
are warnings (benchmark files are sloppy) unless strict mode is on; a literal
above the declared variable count is always an error.  Tautological clauses
are dropped and counted.
"""

from dataclasses import dataclass, field

from ..formula import CnfFormula, normalize_clause

__all__ = ["DimacsError", "MalformedHeader", "LiteralOutOfRange",
           "UnterminatedClause", "ParseReport", "parse_dimacs",
           "parse_dimacs_with_report", "write_dimacs"]


class DimacsError(Exception):
    pass


class MalformedHeader(DimacsError):
    pass


class LiteralOutOfRange(DimacsError):
    pass


class UnterminatedClause(DimacsError):
    pass


@dataclass
class ParseReport:
    warnings: list[str] = field(default_factory=list)
    tautologies_dropped: int = 0
    declared_vars: int = 0
    declared_clauses: int = 0


def parse_dimacs_with_report(text: str, strict: bool = False):
    report = ParseReport()
    tokens: list[str] = []
    header = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if header is not None:
                raise MalformedHeader(f"line {lineno}: second header")
            parts = stripped.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise MalformedHeader(f"line {lineno}: {stripped!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise MalformedHeader(f"line {lineno}: {stripped!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise MalformedHeader(f"line {lineno}: negative counts")
            continue
        if header is None:
            raise MalformedHeader(f"line {lineno}: clause before header")
        tokens.extend(stripped.split())

    if header is None:
        raise MalformedHeader("missing `p cnf` header")
    report.declared_vars, report.declared_clauses = header

    formula = CnfFormula(num_vars=header[0])
    current: list[int] = []
    count = 0
    for tok in tokens:
        try:
            lit = int(tok)
        except ValueError:
            raise UnterminatedClause(f"non-integer token {tok!r}") from None
        if lit == 0:
            clause, taut = normalize_clause(current)
            if taut:
                report.tautologies_dropped += 1
            else:
                formula.add_clause(clause)
            current = []
            count += 1
            continue
        if abs(lit) > header[0]:
            raise LiteralOutOfRange(
                f"literal {lit} exceeds declared {header[0]} variables")
        current.append(lit)
    if current:
        raise UnterminatedClause("clause not terminated by 0 at end of input")

    if count != header[1]:
        message = f"header declares {header[1]} clauses, found {count}"
        if strict:
            raise MalformedHeader(message)
        report.warnings.append(message)
    if report.tautologies_dropped:
        report.warnings.append(
            f"dropped {report.tautologies_dropped} tautological clause(s)")
    return formula, report


def parse_dimacs(text: str, strict: bool = False) -> CnfFormula:
    formula, _ = parse_dimacs_with_report(text, strict)
    return formula


def write_dimacs(formula: CnfFormula) -> str:
    """Canonical text: exact counts, clauses in id order, literals in
    canonical order.  parse(write(f)) reproduces f."""
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    for clause in formula.clauses.values():
        lines.append(" ".join([str(l) for l in clause] + ["0"]))
    return "\n".join(lines) + "\n"
