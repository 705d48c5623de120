"""Canonical forms of instruction sequences.

A closed term built from primitive instructions with `;` (concatenation)
and `*` (infinite repetition) denotes a finite or eventually periodic
instruction sequence.  Normalization flattens a term to a prefix plus a
repeating block, which decides two congruences: same-sequence equality, and
the coarser equality that also collapses chained jumps and shortens every
jump as far as possible.
"""

from iseq import (
    instruction_sequence_congruent,
    parse_instruction_sequence as parse,
    render_term,
    structurally_congruent,
    term_of_canonical,
    to_first_canonical,
    to_second_canonical,
)

# A repetition distributes into prefix + repeating block: the classic
# rotation identity.
left, right = parse("(a;b)*;c"), parse("a;(b;a)*")
print("first canonical of (a;b)*;c :", render_term(term_of_canonical(to_first_canonical(left))))
print("same instruction sequence?  :", instruction_sequence_congruent(left, right))
print()

# The unfolding identity: a* starts with one a and repeats.
print("a* vs a;a* :", instruction_sequence_congruent(parse("a*"), parse("a;a*")))
print()

# Jump shortening needs the stronger jump axioms: these two terms denote
# different raw sequences but the same one once every jump is as short as
# possible.
left, right = parse("+a;#6;b;(-c;#9)*"), parse("+a;#2;b;(-c;#1)*")
print("raw sequences equal?        :", instruction_sequence_congruent(left, right))
print("structurally congruent?     :", structurally_congruent(left, right))
print("second canonical form       :", render_term(term_of_canonical(to_second_canonical(left))))
print()

# A jump that chases itself around the repeating block can never land:
# it collapses to the explicit dead jump #0.
term = parse("-a;#2;(+b;#2)*")
print("self-chasing jumps          :", render_term(term_of_canonical(to_second_canonical(term))))
print("equals -a;#0;(+b;#0)* ?     :", structurally_congruent(term, parse("-a;#0;(+b;#0)*")))
print()

# Chained jumps in a finite sequence merge into direct jumps; jumps past
# the end of a finite sequence have nothing to shorten against.
term = parse("#3;a;#2;b;#1;!")
print("chained jumps resolved      :", render_term(term_of_canonical(to_second_canonical(term))))
