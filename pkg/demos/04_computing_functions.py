"""Programs that compute partial Boolean functions.

Under the in/out/aux register convention, a repetition-free program
computes a partial function when, for every defined input row, loading the
inputs (auxiliaries start false), running the behaviour and applying it to
zeroed outputs yields exactly the expected output registers; undefined rows
must end in inaction, which leaves the empty family.

This demo compiles a truth table into a program, translates a program with
exotic register operations into one using only the core set (set-false
0/0, set-true 1/1, read i/i), and searches for the shortest program
computing a table.
"""

from iseq import (
    IoConvention,
    compile_table,
    computes_check,
    functionally_equivalent,
    parse_function_table,
    parse_instruction_sequence as parse,
    render_term,
    restrict_to_core,
    search_shortest,
)
from iseq.syntax import leaves

xor = parse_function_table(
    "inputs 2 outputs 1\n"
    "00 -> 0\n"
    "01 -> 1\n"
    "10 -> 1\n"
    "11 -> 0\n"
)

program = compile_table(xor)
print("compiled XOR:", render_term(program))
print("computes it? :", computes_check(program, xor, 0))
print()

# A hand-written XOR using the complement operation c/c, which is outside
# the core instruction set.
handwritten = parse("+in:1.i/i;out:1.c/c;+in:2.i/i;out:1.c/c;!")
print("handwritten  :", render_term(handwritten))
print("computes XOR?:", computes_check(handwritten, xor, 0))

conv = IoConvention(2, 1, 0)
core_only = restrict_to_core(handwritten, conv)
print("core-only    :", render_term(core_only))
print("equivalent?  :", functionally_equivalent(handwritten, core_only, conv))
print("length", len(leaves(handwritten)), "->", len(leaves(core_only)), "(two translated complements)")
print()

# Desk-scale superoptimization: the shortest program for 1-bit identity.
identity = parse_function_table("inputs 1 outputs 1\n0 -> 0\n1 -> 1\n")
best = search_shortest(identity, 0, max_len=4)
print("shortest identity program:", render_term(best))
print("no length-2 program works:", search_shortest(identity, 0, max_len=2) is None)
