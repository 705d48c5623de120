"""Canonical forms of instruction sequences and the two structural deciders.

A closed term denotes a nonempty, finite or eventually periodic sequence of
primitive instructions.  ``CanonicalSeq`` stores such a sequence as a finite
prefix plus an optional repeating block; the stored form always has the
least preperiod and the primitive (shortest) period, subject to the prefix
being nonempty.

Two terms are instruction-sequence congruent iff they denote the same
sequence (first canonical forms coincide), and structurally congruent iff
they coincide after additionally collapsing chained jumps and making all
jumps as short as possible (second canonical forms coincide).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, TypeVar

from .syntax import (
    Concat,
    Halt,
    InstructionSequenceTerm,
    Jump,
    PrimitiveInstruction,
    Repeat,
    concat_all,
)

T = TypeVar("T")


def normalize_ultimately_periodic(
    prefix: Sequence[T], period: Sequence[T]
) -> tuple[tuple[T, ...], tuple[T, ...]]:
    """Least-preperiod, primitive-period form of ``prefix + period^omega``.

    The returned prefix may be empty.  For an empty period the sequence is
    finite and returned unchanged.
    """
    pre = list(prefix)
    per = list(period)
    if not per:
        return tuple(pre), ()
    # primitive period: shortest divisor-length block generating the same cycle
    k = len(per)
    for d in range(1, k + 1):
        if k % d == 0 and per[:d] * (k // d) == per:
            per = per[:d]
            break
    # absorb prefix tail into the cycle while it matches the cycle's last element
    while pre and pre[-1] == per[-1]:
        per = [per[-1]] + per[:-1]
        pre.pop()
    return tuple(pre), tuple(per)


@dataclass(frozen=True)
class CanonicalSeq:
    """Flat eventually-periodic instruction sequence.

    Invariants: the prefix is nonempty; an empty period means the sequence
    is finite; a nonempty period is primitive and the preperiod is the least
    one compatible with a nonempty prefix.
    """

    prefix: tuple[PrimitiveInstruction, ...]
    period: tuple[PrimitiveInstruction, ...]

    def __post_init__(self):
        if not self.prefix:
            raise ValueError("canonical sequence needs a nonempty prefix")

    @property
    def is_finite(self) -> bool:
        return not self.period

    def positions(self) -> int:
        """Number of distinct stored positions (prefix plus one period copy)."""
        return len(self.prefix) + len(self.period)

    def wrap(self, pos: int) -> Optional[int]:
        """Map a 1-based position into stored range; None when past a finite end."""
        m = len(self.prefix)
        if pos <= m + len(self.period):
            return pos if pos >= 1 else None
        if self.is_finite:
            return None
        return m + 1 + (pos - m - 1) % len(self.period)

    def at(self, pos: int) -> Optional[PrimitiveInstruction]:
        wrapped = self.wrap(pos)
        if wrapped is None:
            return None
        m = len(self.prefix)
        return self.prefix[wrapped - 1] if wrapped <= m else self.period[wrapped - m - 1]

    def take(self, count: int) -> list[PrimitiveInstruction]:
        out = []
        for pos in range(1, count + 1):
            instr = self.at(pos)
            if instr is None:
                break
            out.append(instr)
        return out


def _canonical(
    prefix: Sequence[PrimitiveInstruction], period: Sequence[PrimitiveInstruction]
) -> CanonicalSeq:
    pre, per = normalize_ultimately_periodic(prefix, period)
    if not pre:
        # a pure repetition: unfold one instruction to keep the prefix nonempty
        pre = (per[0],)
        per = per[1:] + (per[0],)
    return CanonicalSeq(pre, per)


def _flatten(
    t: InstructionSequenceTerm,
) -> tuple[list[PrimitiveInstruction], list[PrimitiveInstruction]]:
    """Term -> (finite part, repeating part); repeating part may be empty.

    Concatenation after an infinite sequence is dropped and repetition of an
    infinite sequence is the sequence itself, matching the intended
    sequence model of the axioms.  Iterative over concatenation chains so
    long flat programs flatten without deep recursion; recursion depth is
    bounded by repetition nesting only.
    """
    prefix: list[PrimitiveInstruction] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Concat):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Repeat):
            body_pre, body_per = _flatten(node.body)
            # whatever follows an infinite sequence is unreachable
            if body_per:
                return prefix + body_pre, body_per
            return prefix, body_pre
        else:
            prefix.append(node)
    return prefix, []


def to_first_canonical(t: InstructionSequenceTerm) -> CanonicalSeq:
    """Minimized first canonical form (decides the sequence the term denotes)."""
    prefix, period = _flatten(t)
    return _canonical(prefix, period)


def instruction_sequence_congruent(
    t: InstructionSequenceTerm, t2: InstructionSequenceTerm
) -> bool:
    return to_first_canonical(t) == to_first_canonical(t2)


# ---------------------------------------------------------------------------
# second canonical form: chained-jump collapse plus jump shortening


def _resolve_chains(canon: CanonicalSeq) -> CanonicalSeq:
    """Replace every jump by a direct jump to its ultimate non-jump target.

    A chain that reaches a 0-jump or that cycles (possible only through the
    repeating part) collapses to a 0-jump; a chain running past the end of a
    finite sequence keeps its accumulated displacement.
    """
    m = len(canon.prefix)
    total = canon.positions()

    def resolve(pos: int, offset: int) -> int:
        if offset == 0:
            return 0
        displacement = offset
        current = pos + offset
        seen = set()
        while True:
            wrapped = canon.wrap(current)
            if wrapped is None:
                return displacement  # past the end of a finite sequence
            instr = canon.at(current)
            if not isinstance(instr, Jump):
                return displacement
            if instr.offset == 0:
                return 0
            if wrapped in seen:
                return 0  # endless chain of jumps
            seen.add(wrapped)
            displacement += instr.offset
            current += instr.offset

    new = []
    for idx in range(1, total + 1):
        instr = canon.at(idx)
        if isinstance(instr, Jump):
            new.append(Jump(resolve(idx, instr.offset)))
        else:
            new.append(instr)
    return CanonicalSeq(tuple(new[:m]), tuple(new[m:]))


def _shorten_jumps(canon: CanonicalSeq) -> CanonicalSeq:
    """Reduce jump literals to the shortest-possible form.

    Only sequences with a repeating part shorten: period jumps reduce modulo
    the period length and prefix jumps reaching past the first period copy
    reduce by multiples of it.  Jumps past the end of a finite sequence are
    left untouched.
    """
    if canon.is_finite:
        return canon
    m = len(canon.prefix)
    k = len(canon.period)
    prefix = []
    for i, instr in enumerate(canon.prefix, start=1):
        if isinstance(instr, Jump):
            offset = instr.offset
            while offset > k + m - i:
                offset -= k
            instr = Jump(offset)
        prefix.append(instr)
    period = []
    for instr in canon.period:
        if isinstance(instr, Jump):
            instr = Jump(instr.offset % k)
        period.append(instr)
    return CanonicalSeq(tuple(prefix), tuple(period))


def _second_step(canon: CanonicalSeq) -> CanonicalSeq:
    shortened = _shorten_jumps(_resolve_chains(canon))
    return _canonical(shortened.prefix, shortened.period)


def to_second_canonical(t: InstructionSequenceTerm) -> CanonicalSeq:
    """Minimized second canonical form: no chained jumps, shortest jumps."""
    canon = to_first_canonical(t)
    while True:
        step = _second_step(canon)
        if step == canon:
            return canon
        canon = step


def structurally_congruent(
    t: InstructionSequenceTerm, t2: InstructionSequenceTerm
) -> bool:
    return to_second_canonical(t) == to_second_canonical(t2)


def term_of_canonical(canon: CanonicalSeq) -> InstructionSequenceTerm:
    """Rebuild a term denoting exactly the canonical sequence."""
    if canon.is_finite:
        return concat_all(canon.prefix)
    return concat_all(list(canon.prefix) + [Repeat(concat_all(canon.period))])


def pad_with_halts(canon: CanonicalSeq, count: int) -> CanonicalSeq:
    """Finite sequence extended with ``count`` termination instructions."""
    if not canon.is_finite:
        raise ValueError("only finite sequences can be padded")
    return CanonicalSeq(canon.prefix + (Halt(),) * count, ())
