import numpy as np
import pytest

from numseg.fst import (
    EPSILON,
    PHI,
    SymbolTable,
    Wfst,
    compose,
    count_paths,
    enumerate_paths,
    random_path,
    shortest_path,
)
from numseg.fst.exceptions import CyclicMachine, NoPath


def _chain(arcs, symbols, osymbols=None):
    """ Machine with states 0..n and arcs (src, in, out, weight, dst)."""
    machine = Wfst(symbols, osymbols)
    for _ in range(1 + max(max(a[0], a[4]) for a in arcs)):
        machine.add_state()
    machine.set_start(0)
    for src, ilabel, olabel, weight, dst in arcs:
        machine.add_arc(
            src,
            machine.isymbols.find(ilabel) if ilabel else EPSILON,
            machine.osymbols.find(olabel) if olabel else EPSILON,
            weight,
            dst,
        )

    return machine


def _random_dag(rng, isymbols, osymbols, max_states):
    machine = Wfst(isymbols, osymbols)
    n = int(rng.integers(2, max_states + 1))
    for _ in range(n):
        machine.add_state()
    machine.set_start(0)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                machine.add_arc(
                    i,
                    int(rng.integers(1, len(isymbols))),
                    int(rng.integers(1, len(osymbols))),
                    float(np.round(rng.uniform(0, 5), 3)),
                    j,
                )
        if rng.random() < 0.3 or i == n - 1:
            machine.set_final(i, float(np.round(rng.uniform(0, 1), 3)))

    return machine


@pytest.fixture
def symbols():
    return SymbolTable(["a", "b", "c"])


def test_shortest_path_picks_lighter_path(symbols):
    machine = _chain(
        [(0, "a", "a", 1.0, 1), (0, "b", "b", 2.0, 1)], symbols
    )
    machine.set_final(1, 0.0)

    path = shortest_path(machine)

    assert path.weight == 1.0
    assert path.olabels == ["a"]
    assert count_paths(machine) == 2


def test_shortest_path_ties_go_to_smallest_output(symbols):
    machine = _chain(
        [(0, "a", "c", 1.0, 1), (0, "a", "b", 1.0, 1)], symbols
    )
    machine.set_final(1, 0.0)

    assert shortest_path(machine).olabels == ["b"]


def test_shortest_path_without_accepting_path(symbols):
    machine = _chain([(0, "a", "a", 1.0, 1)], symbols)

    with pytest.raises(NoPath):
        shortest_path(machine)
    with pytest.raises(NoPath):
        shortest_path(Wfst())


def test_shortest_path_on_cyclic_machine(symbols):
    machine = _chain(
        [(0, "a", "a", 1.0, 0), (0, "b", "b", 2.0, 1)], symbols
    )
    machine.set_final(1, 0.5)

    path = shortest_path(machine)

    assert path.weight == 2.5
    assert path.olabels == ["b"]
    assert not machine.is_acyclic()
    with pytest.raises(CyclicMachine):
        count_paths(machine)


def test_shortest_path_matches_enumeration():
    rng = np.random.default_rng(11)
    symbols = SymbolTable(["a", "b", "c"])
    for _ in range(1000):
        machine = _random_dag(rng, symbols, symbols, max_states=12)
        paths = list(enumerate_paths(machine))

        if not paths:
            with pytest.raises(NoPath):
                shortest_path(machine)
            continue
        best = shortest_path(machine)
        assert best.weight == pytest.approx(min(p.weight for p in paths))
        assert len(paths) == count_paths(machine)


def test_compose_matches_path_pairs():
    rng = np.random.default_rng(5)
    inputs = SymbolTable(["a", "b"])
    middle = SymbolTable(["x", "y"])
    outputs = SymbolTable(["p", "q"])
    for _ in range(1000):
        a = _random_dag(rng, inputs, middle, max_states=6)
        b = _random_dag(rng, SymbolTable(["y", "x"]), outputs, max_states=6)
        pairs = [
            pa.weight + pb.weight
            for pa in enumerate_paths(a)
            for pb in enumerate_paths(b)
            if pa.olabels == pb.ilabels
        ]

        composed = compose(a, b)

        if not pairs:
            with pytest.raises(NoPath):
                shortest_path(composed)
            continue
        assert shortest_path(composed).weight == pytest.approx(min(pairs))


def _path_set(machine):
    return sorted(
        (tuple(p.ilabels), tuple(p.olabels), round(p.weight, 6))
        for p in enumerate_paths(machine)
    )


def test_compose_is_associative():
    rng = np.random.default_rng(8)
    first = SymbolTable(["a", "b"])
    second = SymbolTable(["x", "y"])
    third = SymbolTable(["m", "n"])
    fourth = SymbolTable(["p", "q"])
    for _ in range(1000):
        a = _random_dag(rng, first, second, max_states=5)
        b = _random_dag(rng, second, third, max_states=5)
        c = _random_dag(rng, third, fourth, max_states=5)

        left = compose(compose(a, b), c)
        right = compose(a, compose(b, c))

        assert _path_set(left) == _path_set(right)


def test_compose_with_epsilons_on_both_sides(symbols):
    middle = SymbolTable(["X"])
    outputs = SymbolTable(["Y", "Z"])
    a = _chain([(0, "a", None, 1.0, 1), (1, "b", "X", 1.0, 2)], symbols, middle)
    a.set_final(2, 0.0)
    b = _chain(
        [(0, None, "Z", 0.25, 1), (1, "X", "Y", 0.5, 2)], middle, outputs
    )
    b.set_final(2, 0.0)

    composed = compose(a, b)
    path = shortest_path(composed)

    assert count_paths(composed) == 1
    assert path.weight == 2.75
    assert path.ilabels == ["a", "b"]
    assert path.olabels == ["Z", "Y"]


def test_compose_follows_failure_arcs_only_on_miss(symbols):
    a = _chain([(0, "a", "a", 0.0, 1), (1, "b", "b", 0.0, 2)], symbols)
    a.set_final(2, 0.0)
    b = Wfst(symbols)
    high, low = b.add_state("high"), b.add_state("low")
    b.set_start(high)
    b.set_final(high, 0.0)
    b.set_final(low, 0.0)
    b.add_arc(high, symbols.find("a"), symbols.find("a"), 1.0, high)
    b.add_arc(high, PHI, PHI, 0.5, low)
    b.add_arc(low, symbols.find("a"), symbols.find("a"), 0.1, high)
    b.add_arc(low, symbols.find("b"), symbols.find("b"), 2.0, high)

    path = shortest_path(compose(a, b))

    # "a" is read at high despite the cheaper failure route
    assert path.weight == pytest.approx(1.0 + 0.5 + 2.0)


def test_compose_without_start_is_empty(symbols):
    composed = compose(Wfst(symbols), Wfst(symbols))

    assert composed.num_states() == 0
    assert count_paths(composed) == 0


def test_connect_drops_dead_states(symbols):
    machine = _chain(
        [(0, "a", "a", 1.0, 1), (0, "b", "b", 1.0, 2)], symbols
    )
    machine.set_final(1, 0.0)

    trimmed = machine.connect()

    assert trimmed.num_states() == 2
    assert count_paths(trimmed) == 1


def test_random_path_is_accepting():
    rng = np.random.default_rng(3)
    symbols = SymbolTable(["a", "b", "c"])
    machine = _random_dag(rng, symbols, symbols, max_states=8)
    machine.set_final(0, 0.0)

    path = random_path(machine, rng_seed=1)

    assert path.states[0] == machine.start
    assert machine.is_final(path.states[-1])
    assert path == random_path(machine, rng_seed=1)


def test_add_arc_rejects_bad_states_and_weights(symbols):
    machine = Wfst(symbols)
    state = machine.add_state()

    with pytest.raises(IndexError):
        machine.add_arc(state, 1, 1, 0.0, 5)
    with pytest.raises(ValueError):
        machine.add_arc(state, 1, 1, float("nan"), state)


def test_state_labels_are_unique(symbols):
    machine = Wfst(symbols)

    first = machine.add_state(("pos", 0))

    assert machine.add_state(("pos", 0)) == first
    assert machine.find_state(("pos", 0)) == first
    assert machine.find_state(("pos", 1)) is None


def test_to_text(symbols):
    machine = _chain([(0, "a", "b", 1.5, 1)], symbols)
    machine.set_final(1, 0.0)

    assert machine.to_text() == "0\t1\ta\tb\t1.5\n1\t0\n"
