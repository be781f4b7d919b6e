"""Circuit text format.

    BC1.1
    # comment
    g := AND(x, y);
    o := CARD{1,2}(g, z);
    ASSIGN o;
    ASSIGN ~x;

Gate names are word characters.  Names that are referenced but never defined
become input gates.  T and F take empty argument lists.  The writer emits
definitions in topological order, so writing a parsed canonical file
reproduces it byte for byte.

Inputs exist in the text only through references: an input gate that no gate
or constraint mentions has no representation and is dropped on a round trip.
"""

import re

from ..circuit import (AND, CARD, EQUIV, EVEN, FALSE, IMPLY, INPUT, ITE, NOT,
                       OR, TRUE, XOR, Circuit, validate)

__all__ = ["CIRCUIT_HEADER", "CircuitFormatError", "UnknownFunction",
           "parse_circuit", "write_circuit"]

CIRCUIT_HEADER = "BC1.1"

_FUNC_NAMES = {
    "T": TRUE, "F": FALSE, "NOT": NOT, "AND": AND, "OR": OR, "XOR": XOR,
    "EVEN": EVEN, "EQUIV": EQUIV, "IMPLY": IMPLY, "ITE": ITE, "CARD": CARD,
}
_NAME_OF_FUNC = {v: k for k, v in _FUNC_NAMES.items()}

_DEF_RE = re.compile(
    r"^(?P<name>\w+)\s*:=\s*(?P<func>[A-Z]+)"
    r"(?:\{(?P<lo>\d+),(?P<hi>\d+)\})?"
    r"\s*\((?P<args>[^()]*)\)\s*;$")
_ASSIGN_RE = re.compile(r"^ASSIGN\s+(?P<neg>~?)(?P<name>\w+)\s*;$")


class CircuitFormatError(Exception):
    pass


class UnknownFunction(CircuitFormatError):
    pass


def parse_circuit(text: str) -> Circuit:
    lines = text.splitlines()
    if not lines or lines[0].strip() != CIRCUIT_HEADER:
        raise CircuitFormatError(f"missing {CIRCUIT_HEADER} header line")

    circuit = Circuit()
    referenced: list[str] = []
    constraints: list[tuple[str, bool]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _DEF_RE.match(stripped)
        if m:
            func_name = m.group("func")
            if func_name not in _FUNC_NAMES:
                raise UnknownFunction(f"line {lineno}: {func_name!r}")
            func = _FUNC_NAMES[func_name]
            args = [a.strip() for a in m.group("args").split(",") if a.strip()]
            lo = hi = None
            if func == CARD:
                if m.group("lo") is None:
                    raise CircuitFormatError(f"line {lineno}: CARD needs "
                                             "{low,high} bounds")
                lo, hi = int(m.group("lo")), int(m.group("hi"))
            elif m.group("lo") is not None:
                raise CircuitFormatError(f"line {lineno}: bounds only "
                                         "allowed on CARD")
            for arg in args:
                if not re.fullmatch(r"\w+", arg):
                    raise CircuitFormatError(f"line {lineno}: bad argument "
                                             f"{arg!r}")
            circuit.add_gate(m.group("name"), func, args, lo, hi)
            referenced.extend(args)
            continue
        m = _ASSIGN_RE.match(stripped)
        if m:
            constraints.append((m.group("name"), not m.group("neg")))
            referenced.append(m.group("name"))
            continue
        raise CircuitFormatError(f"line {lineno}: cannot parse {stripped!r}")

    for name in referenced:
        if name not in circuit.gates:
            circuit.add_input(name)
    for name, req in constraints:
        circuit.add_constraint(name, req)
    validate(circuit)
    return circuit


def write_circuit(circuit: Circuit) -> str:
    """Canonical text: definitions in topological order (inputs implicit),
    constraints in stored order."""
    lines = [CIRCUIT_HEADER]
    for name in validate(circuit):
        gate = circuit.gates[name]
        if gate.func == INPUT:
            continue
        func_name = _NAME_OF_FUNC[gate.func]
        if gate.func == CARD:
            func_name += f"{{{gate.lo},{gate.hi}}}"
        lines.append(f"{name} := {func_name}({', '.join(gate.children)});")
    for name, req in circuit.constraints:
        lines.append(f"ASSIGN {'' if req else '~'}{name};")
    return "\n".join(lines) + "\n"
