import itertools
import random

import pytest

from iseq.extraction import extract
from iseq.interaction import Outcome, abstract_tau, apply, simulate, use
from iseq.registers import evaluate_family
from iseq.syntax import (
    AbstractAction,
    Focus,
    RegisterAction,
    RegisterContent,
    UnaryBoolFunc,
    content_of_bit,
    parse_instruction_sequence as parse,
    parse_register_family,
)
from iseq.threads import (
    DEAD,
    STOP,
    TAU,
    Branch,
    RegularThread,
    branch,
    prefix_action,
    threads_equal,
)

from .genterms import random_register_program

ID = UnaryBoolFunc.IDENTITY


def fam(text):
    return evaluate_family(parse_register_family(text))


def decrement_program():
    text = ";".join(
        f"-aux:{i}.i/i;#3;aux:{i}.0/0;!;aux:{i}.1/1" for i in range(1, 5)
    )
    return parse(text)


def test_use_decrement_gives_four_internal_steps():
    used = use(extract(decrement_program()), fam("{aux:4=1, aux:3=1, aux:2=1, aux:1=0}"))
    expected = prefix_action(
        TAU, prefix_action(TAU, prefix_action(TAU, prefix_action(TAU, STOP)))
    )
    assert threads_equal(used, expected)
    assert len(used.nodes) == 5


def test_apply_decrement_fourteen_to_thirteen():
    result = apply(extract(decrement_program()), fam("{aux:4=1, aux:3=1, aux:2=1, aux:1=0}"))
    assert result == fam("{aux:4=1, aux:3=1, aux:2=0, aux:1=1}")


def test_use_stop_and_dead_fixed():
    assert use(STOP, fam("{f=1}")) == STOP
    assert use(DEAD, fam("{f=1}")) == DEAD


def test_use_unknown_focus_stays_visible():
    action = RegisterAction(Focus("f"), ID, ID)
    t = branch(action, STOP, DEAD)
    assert threads_equal(use(t, {}), t)


def test_use_inoperative_register_deadlocks():
    action = RegisterAction(Focus("f"), ID, ID)
    t = branch(action, STOP, DEAD)
    assert use(t, fam("{f=-}")) == DEAD


def test_apply_stop_returns_family_unchanged():
    u = fam("{f=1, g=0}")
    assert apply(STOP, u) == u


def test_apply_divergence_yields_empty_family():
    action = RegisterAction(Focus("f"), ID, ID)
    loop = RegularThread((Branch(action, 0, 0),), 0)
    assert apply(loop, fam("{f=1}")) == {}


def test_apply_unknown_focus_yields_empty_family():
    action = RegisterAction(Focus("f"), ID, ID)
    assert apply(branch(action, STOP, STOP), {}) == {}


def test_apply_untouched_bindings_pass_through():
    prog = parse("out:1.1/1;!")
    result = apply(extract(prog), fam("{out:1=0, g=1}"))
    assert result == fam("{out:1=1, g=1}")


def test_abstract_tau_concealment():
    chain = prefix_action(TAU, prefix_action(TAU, STOP))
    assert abstract_tau(chain) == STOP


def test_abstract_tau_livelock_is_dead():
    loop = RegularThread((Branch(TAU, 0, 0),), 0)
    assert abstract_tau(loop) == DEAD


def test_abstract_tau_keeps_visible_actions():
    a = AbstractAction("a")
    t = branch(a, prefix_action(TAU, STOP), DEAD)
    assert abstract_tau(t) == branch(a, STOP, DEAD)


def test_use_on_endless_flip_loop():
    # repeated complementing never terminates: internal livelock
    thread = extract(parse("(f.c/c)*"))
    used = use(thread, fam("{f=0}"))
    assert abstract_tau(used) == DEAD
    assert apply(thread, fam("{f=0}")) == {}


def test_use_rejects_abstract_actions():
    t = branch(AbstractAction("a"), STOP, DEAD)
    with pytest.raises(ValueError):
        use(t, fam("{f=1}"))
    with pytest.raises(ValueError):
        apply(t, fam("{f=1}"))


# -- simulate -------------------------------------------------------------------


def test_simulate_simple_write():
    outcome, family = simulate(parse("out:1.1/1;!"), fam("{out:1=0}"), 10)
    assert outcome is Outcome.TERMINATED
    assert family == fam("{out:1=1}")


def test_simulate_zero_jump_inactive():
    assert simulate(parse("#0"), {}, 10) == (Outcome.INACTIVE, {})


def test_simulate_decrement():
    outcome, family = simulate(
        decrement_program(), fam("{aux:1=0, aux:2=1, aux:3=1, aux:4=1}"), 100
    )
    assert outcome is Outcome.TERMINATED
    assert family == fam("{aux:1=1, aux:2=0, aux:3=1, aux:4=1}")


def test_simulate_fuel_bounds_divergence():
    outcome, _ = simulate(parse("(f.i/i)*"), fam("{f=1}"), 25)
    assert outcome is Outcome.FUEL_EXHAUSTED


def test_simulate_past_end_inactive():
    outcome, _ = simulate(parse("f.i/i"), fam("{f=1}"), 10)
    assert outcome is Outcome.INACTIVE


# -- triangulation --------------------------------------------------------------


def test_oracle_triangulation():
    """simulate, apply-after-extract and termination via abstraction agree."""
    rng = random.Random(71)
    foci = [Focus("f"), Focus("g", 1), Focus("h")]
    for _ in range(150):
        prog, _ = random_register_program(rng, foci, rng.randint(1, 8))
        thread = extract(prog)
        for bits in itertools.product((False, True), repeat=3):
            family = {f: content_of_bit(b) for f, b in zip(foci, bits)}
            outcome, sim_family = simulate(prog, dict(family), 10_000)
            assert outcome is not Outcome.FUEL_EXHAUSTED
            algebraic = apply(thread, dict(family))
            concealed = abstract_tau(use(thread, dict(family)))
            if outcome is Outcome.TERMINATED:
                assert algebraic == sim_family
                assert concealed == STOP
            else:
                assert algebraic == {}
                assert concealed == DEAD


def test_use_then_apply_is_finite_for_bound_programs():
    rng = random.Random(73)
    foci = [Focus("f"), Focus("g")]
    for _ in range(60):
        prog, _ = random_register_program(rng, foci, rng.randint(1, 6))
        family = {Focus("f"): RegisterContent.ZERO, Focus("g"): RegisterContent.ONE}
        used = use(extract(prog), family)
        # every bound-register action is consumed into an internal step
        for node in used.nodes:
            if isinstance(node, Branch) and node.action is not TAU:
                assert node.action.focus not in family
        # repetition-free programs leave an acyclic used thread
        seen = set()

        def acyclic(state, path):
            node = used.node(state)
            assert state not in path
            if isinstance(node, Branch) and state not in seen:
                seen.add(state)
                acyclic(node.on_true, path | {state})
                acyclic(node.on_false, path | {state})

        acyclic(used.root, frozenset())
