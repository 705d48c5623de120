"""From instruction sequences to behaviours.

Executing an instruction sequence produces a thread: a rooted graph whose
states terminate (S), go inactive (D), or perform a basic action and branch
on its Boolean reply.  Thread extraction computes that graph; two sequences
are behaviourally equivalent when their threads are bisimilar, and
behaviourally congruent when they stay equivalent under every jump-in entry
point and every termination padding.
"""

from iseq import (
    behaviourally_congruent,
    behaviourally_equivalent,
    extract,
    parse_instruction_sequence as parse,
    render_term,
    render_thread,
    synthesize_repetition,
)
from iseq.syntax import Repeat

# A test, a pair of jumps, an action, termination.
term = parse("+a;#2;#3;b;!")
print("term    :", render_term(term))
print(render_thread(extract(term)))
print()

# Repeating the same block turns the dead branch into a retry loop.
loop = parse("(+a;#2;#3;b;!)*")
print("term    :", render_term(loop))
print(render_thread(extract(loop)))
print()

# Equivalent behaviour, different spelling: the skipped instruction is
# never executed, so its action does not matter.
print("a;#2;+b;! ~ a;#2;+c;!  :", behaviourally_equivalent(parse("a;#2;+b;!"), parse("a;#2;+c;!")))
# ...but entering at the third instruction exposes the difference, so the
# pair is not a congruence.
print("and under every entry? :", behaviourally_congruent(parse("a;#2;+b;!"), parse("a;#2;+c;!")))
print()

# A pair that survives every entry point and padding.
print(
    "(+a;#3;#2;b)* ~ (-a;#3;#2;b)* under every context:",
    behaviourally_congruent(parse("(+a;#3;#2;b)*"), parse("(-a;#3;#2;b)*")),
)
print()

# Every behaviour a term can produce is also the behaviour of a single
# repetition of some repetition-free term.
single = synthesize_repetition(loop)
print("single-repetition form :", render_term(single), "*")
print("equivalent?            :", behaviourally_equivalent(loop, Repeat(single)))
