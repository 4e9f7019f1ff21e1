"""Step-bounded oracle register machines and stage approximations of jumps.

Program codes
-------------
A code ``e`` decodes to a list of instruction codes: ``0`` is the empty
list, ``e > 0`` splits as ``pair(head, tail)`` of ``e - 1``.  An instruction
code ``i`` has opcode ``i % 5`` and argument ``i // 5``:

====== ======= ===========================================
opcode name    argument
====== ======= ===========================================
0      HALT    must be 0
1      INC r   ``r``
2      DEC r   ``r`` (floors at 0)
3      JZ r o  ``pair(r, z)``, ``o`` the zigzag decoding of ``z``
4      QUERY   ``pair(a, b)``: ``reg[b] = X(reg[a])``
====== ======= ===========================================

``JZ`` jumps to ``pc + o`` when ``reg[r] == 0``; targets must lie in
``[0, len(program)]`` and running off the end halts.  The empty program, a
nonzero ``HALT`` argument and out-of-range jump targets make a code invalid;
invalid codes decode to ``[HALT]``.

Register 0 holds the input.  A run is bounded by ``t`` in every respect:
at most ``t`` steps, register values at most ``t``, oracle queries below
``t``.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


def pair(m: int, e: int) -> int:
    """Cantor pairing ``(m + e)(m + e + 1)/2 + e``."""
    s = m + e
    return s * (s + 1) // 2 + e


def unpair(z: int) -> tuple[int, int]:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    e = z - w * (w + 1) // 2
    return w - e, e


def _zigzag(z: int) -> int:
    return z // 2 if z % 2 == 0 else -(z + 1) // 2


def _unzigzag(o: int) -> int:
    return 2 * o if o >= 0 else -2 * o - 1


@dataclass(frozen=True)
class Instr:
    op: str
    a: int = 0
    b: int = 0

    def __str__(self):
        if self.op == "HALT":
            return "HALT"
        if self.op in ("INC", "DEC"):
            return f"{self.op} {self.a}"
        return f"{self.op} {self.a} {self.b}"


HALT_PROGRAM = (Instr("HALT"),)
_OPS = ("HALT", "INC", "DEC", "JZ", "QUERY")


def _decode_instr(i: int) -> Optional[Instr]:
    op, arg = _OPS[i % 5], i // 5
    if op == "HALT":
        return Instr("HALT") if arg == 0 else None
    if op in ("INC", "DEC"):
        return Instr(op, arg)
    x, y = unpair(arg)
    if op == "JZ":
        return Instr("JZ", x, _zigzag(y))
    return Instr("QUERY", x, y)


def _encode_instr(ins: Instr) -> int:
    op = _OPS.index(ins.op)
    if ins.op == "HALT":
        arg = 0
    elif ins.op in ("INC", "DEC"):
        arg = ins.a
    elif ins.op == "JZ":
        arg = pair(ins.a, _unzigzag(ins.b))
    else:
        arg = pair(ins.a, ins.b)
    return 5 * arg + op


def _valid(program: Sequence[Instr]) -> bool:
    if not program:
        return False
    for pc, ins in enumerate(program):
        if ins is None:
            return False
        if ins.op == "JZ" and not 0 <= pc + ins.b <= len(program):
            return False
    return True


def decode(e: int) -> tuple:
    """Program for code ``e``; invalid codes give ``(HALT,)``."""
    if e < 0:
        raise ValueError("program codes are non-negative")
    out = []
    while e > 0:
        head, e = unpair(e - 1)
        out.append(_decode_instr(head))
    return tuple(out) if _valid(out) else HALT_PROGRAM


def encode(program: Iterable[Instr]) -> int:
    program = list(program)
    if not _valid(program):
        raise ValueError("not a valid program")
    e = 0
    for ins in reversed(program):
        e = pair(_encode_instr(ins), e) + 1
    return e


def assemble(text: str) -> int:
    """Program text (one instruction per line, ``#`` comments) to its code."""
    program = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        op, *args = line.split()
        op = op.upper()
        if op not in _OPS:
            raise ValueError(f"unknown instruction {op!r}")
        want = {"HALT": 0, "INC": 1, "DEC": 1, "JZ": 2, "QUERY": 2}[op]
        if len(args) != want:
            raise ValueError(f"{op} takes {want} operands: {line!r}")
        nums = [int(x) for x in args]
        if (op == "JZ" and nums[0] < 0) or (op != "JZ" and any(x < 0 for x in nums)):
            raise ValueError(f"negative register in {line!r}")
        program.append(Instr(op, *nums))
    return encode(program)


def disassemble(e: int) -> str:
    return "\n".join(str(ins) for ins in decode(e)) + "\n"


class OracleApprox:
    """A set known on ``range(horizon)``."""

    def __init__(self, members: Iterable[int], horizon: int):
        if horizon < 0:
            raise ValueError("horizon must be non-negative")
        self.horizon = horizon
        self.members = frozenset(m for m in members if 0 <= m < horizon)

    def __contains__(self, q: int) -> bool:
        if not 0 <= q < self.horizon:
            raise IndexError(f"query {q} outside horizon {self.horizon}")
        return q in self.members

    def bits(self) -> list[int]:
        return [int(q in self.members) for q in range(self.horizon)]

    @classmethod
    def named(cls, name: str, horizon: int) -> "OracleApprox":
        if name == "empty":
            return cls((), horizon)
        if name == "even":
            return cls(range(0, horizon, 2), horizon)
        if name == "full":
            return cls(range(horizon), horizon)
        if name.startswith("list:"):
            body = name[5:]
            return cls([int(x) for x in body.split(",") if x.strip()], horizon)
        raise ValueError(f"unknown base set {name!r}")


class Outcome(enum.Enum):
    HALTED = "halted"
    RUNNING = "running"
    ORACLE_INSUFFICIENT = "oracle-insufficient"


def step_run(e, X: OracleApprox, m: int, t: int) -> Outcome:
    """Run program ``e`` (a code or decoded program) on input ``m``."""
    if t < 0:
        raise ValueError("bound must be non-negative")
    program = decode(e) if isinstance(e, int) else tuple(e)
    if m > t:
        return Outcome.RUNNING
    regs = {0: m}
    pc = 0
    for _ in range(t):
        if pc == len(program):
            return Outcome.HALTED
        ins = program[pc]
        if ins.op == "HALT":
            return Outcome.HALTED
        if ins.op == "INC":
            v = regs.get(ins.a, 0) + 1
            if v > t:
                return Outcome.RUNNING
            regs[ins.a] = v
            pc += 1
        elif ins.op == "DEC":
            regs[ins.a] = max(0, regs.get(ins.a, 0) - 1)
            pc += 1
        elif ins.op == "JZ":
            pc = pc + ins.b if regs.get(ins.a, 0) == 0 else pc + 1
        else:
            q = regs.get(ins.a, 0)
            if q >= t:
                return Outcome.RUNNING
            if q >= X.horizon:
                return Outcome.ORACLE_INSUFFICIENT
            regs[ins.b] = int(q in X.members)
            pc += 1
    return Outcome.RUNNING


@dataclass(frozen=True)
class JumpStageSet:
    level: int
    stage: int
    members: frozenset

    def to_json(self) -> dict:
        return {"level": self.level, "stage": self.stage, "members": sorted(self.members)}

    @classmethod
    def from_json(cls, obj: dict) -> "JumpStageSet":
        return cls(int(obj["level"]), int(obj["stage"]), frozenset(obj["members"]))

    def as_oracle(self, horizon: int) -> OracleApprox:
        return OracleApprox(self.members, horizon)


def jump_stage(X: OracleApprox, s: int, level: int = 1) -> JumpStageSet:
    """``{pair(m, e) : m, e < s and e halts on m with oracle X within s}``."""
    if s < 0:
        raise ValueError("stage must be non-negative")
    members = set()
    for e in range(s):
        program = decode(e)
        for m in range(s):
            if step_run(program, X, m, s) is Outcome.HALTED:
                members.add(pair(m, e))
    return JumpStageSet(level, s, frozenset(members))


def iter_jump_stage(X: OracleApprox, levels: int, s: int) -> JumpStageSet:
    if levels < 0:
        raise ValueError("levels must be non-negative")
    current = JumpStageSet(0, s, X.members)
    for i in range(1, levels + 1):
        current = jump_stage(current.as_oracle(s), s, level=i)
    return current


class Verdict(enum.Enum):
    CONSISTENT = "consistent"
    REFUTED = "refuted"


def check_reduction_certificate(e, e_co, Y: OracleApprox, X: OracleApprox, B: int) -> Verdict:
    """Look for a finite refutation of "``e`` enumerates ``Y`` and ``e_co`` its
    complement, relative to ``X``".  Only refutations are conclusive."""
    if B < 0:
        raise ValueError("bound must be non-negative")
    for m in range(Y.horizon):
        yes = step_run(e, X, m, B) is Outcome.HALTED
        no = step_run(e_co, X, m, B) is Outcome.HALTED
        inside = m in Y.members
        if (yes and no) or (yes and not inside) or (no and inside):
            return Verdict.REFUTED
    return Verdict.CONSISTENT


def ledger_jump_cost(ledger) -> int:
    """Jump levels charged by a reduction ledger, a list of them, or a solve."""
    if hasattr(ledger, "ledgers"):
        ledger = ledger.ledgers
    if isinstance(ledger, (list, tuple)):
        return sum(ledger_jump_cost(x) for x in ledger)
    return ledger.jump_levels


def random_program(rng: random.Random, length: int, registers: int = 3,
                   oracle_bias: float = 0.3) -> tuple:
    """A valid program of the given length, for property tests."""
    program = []
    for pc in range(length):
        r = rng.random()
        if r < oracle_bias:
            ins = Instr("QUERY", rng.randrange(registers), rng.randrange(registers))
        elif r < oracle_bias + 0.25:
            ins = Instr("INC", rng.randrange(registers))
        elif r < oracle_bias + 0.45:
            ins = Instr("DEC", rng.randrange(registers))
        elif r < 0.95:
            ins = Instr("JZ", rng.randrange(registers), rng.randint(-pc, length - pc))
        else:
            ins = Instr("HALT")
        program.append(ins)
    return tuple(program)
