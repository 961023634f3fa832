""" Weighted finite-state transducers over the tropical semiring

Weights are negative log probabilities: path weights add up and the best
path is the one with the smallest weight. Label 0 is epsilon; label PHI marks
failure arcs, followed on the right operand of a composition only when no
arc matches the requested label.
"""
import collections
import heapq
import logging
import math

import numpy as np

from .exceptions import CyclicMachine, NoPath

logger = logging.getLogger(__name__)

EPSILON = 0
PHI = -1
EPSILON_SYMBOL = "<eps>"
PHI_SYMBOL = "<phi>"
TROPICAL_ZERO = math.inf

Arc = collections.namedtuple("Arc", "ilabel olabel weight nextstate")
Path = collections.namedtuple("Path", "states arcs weight ilabels olabels")
Path.__doc__ = """Accepting path of a machine.

Attributes:
    states (list[int]): visited states, start first.
    arcs (list[Arc]): traversed arcs.
    weight (float): arc weights plus the final weight of the last state.
    ilabels (list[str]): input symbols, epsilons removed.
    olabels (list[str]): output symbols, epsilons removed.
"""


class SymbolTable:
    """Bidirectional map between symbols and integer labels.

    Label 0 is always epsilon.
    """

    def __init__(self, symbols=()):
        self._symbols = [EPSILON_SYMBOL]
        self._ids = {EPSILON_SYMBOL: EPSILON}
        for symbol in symbols:
            self.add(symbol)

    def add(self, symbol):
        """ Label of symbol, assigning the next free one if needed."""
        if symbol not in self._ids:
            self._ids[symbol] = len(self._symbols)
            self._symbols.append(symbol)

        return self._ids[symbol]

    def find(self, symbol):
        """ Label of symbol, or None if it is unknown."""
        return self._ids.get(symbol)

    def symbol(self, label):
        if label == PHI:
            return PHI_SYMBOL
        return self._symbols[label]

    def symbols(self):
        """ Non-epsilon symbols in label order."""
        return list(self._symbols[1:])

    def __contains__(self, symbol):
        return symbol in self._ids

    def __len__(self):
        return len(self._symbols)


class Wfst:
    """Weighted transducer with optional hashable state labels.

    Attributes:
        isymbols (SymbolTable): input symbols.
        osymbols (SymbolTable): output symbols.
        start (int): start state, None until set.
    """

    def __init__(self, isymbols=None, osymbols=None):
        self.isymbols = isymbols if isymbols is not None else SymbolTable()
        self.osymbols = osymbols if osymbols is not None else self.isymbols
        self.start = None
        self._arcs = []
        self._finals = []
        self._labels = []
        self._label_index = {}

    def add_state(self, label=None):
        """Add a state.

        Args:
            label (hashable): optional unique state label.

        Returns:
            int: the new state id, or the id of the state already carrying
            label.
        """
        if label is not None and label in self._label_index:
            return self._label_index[label]
        state = len(self._arcs)
        self._arcs.append([])
        self._finals.append(TROPICAL_ZERO)
        self._labels.append(label)
        if label is not None:
            self._label_index[label] = state

        return state

    def _check_state(self, state):
        if not 0 <= state < len(self._arcs):
            raise IndexError(f"State {state} does not exist.")

    def set_start(self, state):
        self._check_state(state)
        self.start = state

    def set_final(self, state, weight=0.0):
        self._check_state(state)
        self._finals[state] = weight

    def add_arc(self, state, ilabel, olabel, weight, nextstate):
        """Add an arc.

        Raises:
            IndexError: if state or nextstate does not exist.
            ValueError: if weight is NaN or -inf.
        """
        self._check_state(state)
        self._check_state(nextstate)
        if math.isnan(weight) or weight == -math.inf:
            raise ValueError(f"Arc weight {weight} is not a tropical weight.")
        self._arcs[state].append(Arc(ilabel, olabel, weight, nextstate))

    def arcs(self, state):
        return self._arcs[state]

    def final(self, state):
        return self._finals[state]

    def is_final(self, state):
        return self._finals[state] != TROPICAL_ZERO

    def finals(self):
        return [s for s in self.states() if self.is_final(s)]

    def states(self):
        return range(len(self._arcs))

    def num_states(self):
        return len(self._arcs)

    def num_arcs(self):
        return sum(len(arcs) for arcs in self._arcs)

    def state_label(self, state):
        return self._labels[state]

    def find_state(self, label):
        """ State carrying label, or None."""
        return self._label_index.get(label)

    def with_start(self, state):
        """ A machine sharing states and arcs with this one, started at state.
        """
        self._check_state(state)
        machine = Wfst(self.isymbols, self.osymbols)
        machine._arcs = self._arcs
        machine._finals = self._finals
        machine._labels = self._labels
        machine._label_index = self._label_index
        machine.start = state

        return machine

    def has_output_epsilons(self, state):
        return any(arc.olabel == EPSILON for arc in self._arcs[state])

    def topological_order(self):
        """States reachable from start in topological order (Kahn).

        Returns:
            list[int]: the order, or None if a cycle is reachable.
        """
        if self.start is None:
            return []
        reachable = self._reachable()
        indegree = dict.fromkeys(reachable, 0)
        for state in reachable:
            for arc in self._arcs[state]:
                indegree[arc.nextstate] += 1
        queue = collections.deque(
            s for s in sorted(reachable) if not indegree[s]
        )
        order = []
        while queue:
            state = queue.popleft()
            order.append(state)
            for arc in self._arcs[state]:
                indegree[arc.nextstate] -= 1
                if indegree[arc.nextstate] == 0:
                    queue.append(arc.nextstate)
        if len(order) != len(reachable):
            return None

        return order

    def _reachable(self):
        seen, stack = {self.start}, [self.start]
        while stack:
            for arc in self._arcs[stack.pop()]:
                if arc.nextstate not in seen:
                    seen.add(arc.nextstate)
                    stack.append(arc.nextstate)

        return seen

    def _coreachable(self):
        incoming = collections.defaultdict(list)
        for state in self.states():
            for arc in self._arcs[state]:
                incoming[arc.nextstate].append(state)
        stack = self.finals()
        seen = set(stack)
        while stack:
            for source in incoming[stack.pop()]:
                if source not in seen:
                    seen.add(source)
                    stack.append(source)

        return seen

    def is_acyclic(self):
        return self.topological_order() is not None

    def connect(self):
        """Copy of the machine restricted to useful states.

        Returns:
            Wfst: states both reachable from start and co-reachable to a
            final state, labels kept.
        """
        machine = Wfst(self.isymbols, self.osymbols)
        if self.start is None:
            return machine
        useful = self._reachable() & self._coreachable()
        mapping = {}
        for state in sorted(useful):
            mapping[state] = machine.add_state()
            machine._labels[mapping[state]] = self._labels[state]
        for state in sorted(useful):
            machine._finals[mapping[state]] = self._finals[state]
            for arc in self._arcs[state]:
                if arc.nextstate in useful:
                    machine.add_arc(
                        mapping[state],
                        arc.ilabel,
                        arc.olabel,
                        arc.weight,
                        mapping[arc.nextstate],
                    )
        if self.start in useful:
            machine.start = mapping[self.start]

        return machine

    def to_text(self):
        """Dump the machine in the 5-column arc format.

        Returns:
            str: `src dst in out weight` per arc, then `state weight` per
            final state.
        """
        lines = []
        for state in self.states():
            for arc in self._arcs[state]:
                lines.append(
                    f"{state}\t{arc.nextstate}\t"
                    f"{self.isymbols.symbol(arc.ilabel)}\t"
                    f"{self.osymbols.symbol(arc.olabel)}\t{arc.weight:g}"
                )
        for state in self.finals():
            lines.append(f"{state}\t{self._finals[state]:g}")

        return "\n".join(lines) + "\n" if lines else ""

    def __repr__(self):
        return f"Wfst(states={self.num_states()}, arcs={self.num_arcs()})"


def _arc_index(machine):
    """ Per state mapping of input label to arcs."""
    index = []
    for state in machine.states():
        by_label = collections.defaultdict(list)
        for arc in machine.arcs(state):
            by_label[arc.ilabel].append(arc)
        index.append(by_label)

    return index


def _matches(index, state, label):
    """Arcs of the right operand consuming label at state.

    Failure arcs are followed while no arc with label leaves the current
    state; their weights are added to the returned arcs.

    Yields:
        tuple: (arc, accumulated failure weight).
    """
    penalty, seen = 0.0, set()
    while state not in seen:
        seen.add(state)
        arcs = index[state].get(label)
        if arcs:
            for arc in arcs:
                yield arc, penalty
            return
        failures = index[state].get(PHI)
        if not failures:
            return
        penalty += failures[0].weight
        state = failures[0].nextstate


def compose(a, b):
    """Compose two transducers.

    Pairs a's output labels with b's input labels by symbol. A sequence
    epsilon filter keeps exactly one interleaving of epsilon moves: a may
    move alone on an output epsilon only while b has not moved alone since
    the last match. Failure arcs of b are followed only to match a label.
    Result states are labelled (label in a, label in b, filter state) and
    only states reachable from the start are built.

    Args:
        a (Wfst): left operand.
        b (Wfst): right operand.

    Returns:
        Wfst: the composed machine, possibly without accepting path.
    """
    machine = Wfst(a.isymbols, b.osymbols)
    if a.start is None or b.start is None:
        return machine
    relabel = {
        label: b.isymbols.find(a.osymbols.symbol(label))
        for label in range(1, len(a.osymbols))
    }
    index = _arc_index(b)

    def state_of(q1, q2, f):
        label = (a.state_label(q1), b.state_label(q2), f)
        key = (q1, q2, f)
        if key not in ids:
            ids[key] = machine.add_state()
            machine._labels[ids[key]] = label
            queue.append(key)
        return ids[key]

    ids, queue = {}, collections.deque()
    machine.start = state_of(a.start, b.start, 0)
    while queue:
        q1, q2, f = queue.popleft()
        source = ids[(q1, q2, f)]
        if a.is_final(q1) and b.is_final(q2):
            machine.set_final(source, a.final(q1) + b.final(q2))
        a_has_epsilons = a.has_output_epsilons(q1)
        for arc1 in a.arcs(q1):
            if arc1.olabel == EPSILON:
                if f == 0:
                    target = state_of(arc1.nextstate, q2, 0)
                    machine.add_arc(
                        source, arc1.ilabel, EPSILON, arc1.weight, target
                    )
                continue
            label = relabel.get(arc1.olabel)
            if label is None:
                continue
            for arc2, penalty in _matches(index, q2, label):
                target = state_of(arc1.nextstate, arc2.nextstate, 0)
                machine.add_arc(
                    source,
                    arc1.ilabel,
                    arc2.olabel,
                    arc1.weight + penalty + arc2.weight,
                    target,
                )
        a_blocked = not a.is_final(q1) and all(
            arc.olabel == EPSILON for arc in a.arcs(q1)
        )
        if a_blocked:
            continue
        for arc2 in index[q2].get(EPSILON, ()):
            target = state_of(q1, arc2.nextstate, 1 if a_has_epsilons else 0)
            machine.add_arc(source, EPSILON, arc2.olabel, arc2.weight, target)
    logger.debug(f"Composed {a} with {b} into {machine}.")

    return machine


def _cons_less(a, b):
    """ Lexicographic order of two cons lists (symbol, rest) ending in ()."""
    while a is not b:
        if not a or not b:
            return not a and bool(b)
        if a[0] != b[0]:
            return a[0] < b[0]
        a, b = a[1], b[1]

    return False


def _flatten(cons):
    items = []
    while cons:
        items.append(cons[0])
        cons = cons[1]

    return items


def _build_path(machine, states, arcs):
    weight = math.fsum(arc.weight for arc in arcs) + machine.final(states[-1])

    return Path(
        states=states,
        arcs=arcs,
        weight=weight,
        ilabels=[
            machine.isymbols.symbol(arc.ilabel)
            for arc in arcs
            if arc.ilabel not in (EPSILON, PHI)
        ],
        olabels=[
            machine.osymbols.symbol(arc.olabel)
            for arc in arcs
            if arc.olabel not in (EPSILON, PHI)
        ],
    )


def _shortest_acyclic(machine, order):
    """Backward dynamic program over a topological order.

    Ties on weight go to the lexicographically smallest output sequence.
    """
    best = {}
    for state in reversed(order):
        candidate = None
        if machine.is_final(state):
            candidate = (machine.final(state), (), None)
        for arc in machine.arcs(state):
            rest = best.get(arc.nextstate)
            if rest is None:
                continue
            output = rest[1]
            if arc.olabel not in (EPSILON, PHI):
                output = (machine.osymbols.symbol(arc.olabel), output)
            option = (arc.weight + rest[0], output, arc)
            if (
                candidate is None
                or option[0] < candidate[0]
                or (
                    option[0] == candidate[0]
                    and _cons_less(option[1], candidate[1])
                )
            ):
                candidate = option
        if candidate is not None and candidate[0] < TROPICAL_ZERO:
            best[state] = candidate
    if machine.start not in best:
        raise NoPath("The machine has no accepting path.")
    states, arcs, state = [machine.start], [], machine.start
    while best[state][2] is not None:
        arc = best[state][2]
        arcs.append(arc)
        state = arc.nextstate
        states.append(state)

    return _build_path(machine, states, arcs)


def _shortest_dijkstra(machine):
    """ Single-source shortest path for machines with cycles."""
    distance = {machine.start: 0.0}
    back = {machine.start: None}
    heap = [(0.0, machine.start)]
    done = set()
    best_final, best_weight = None, TROPICAL_ZERO
    while heap:
        weight, state = heapq.heappop(heap)
        if state in done:
            continue
        done.add(state)
        if weight >= best_weight:
            break
        if machine.is_final(state):
            total = weight + machine.final(state)
            if total < best_weight:
                best_final, best_weight = state, total
        for arc in machine.arcs(state):
            candidate = weight + arc.weight
            if candidate < distance.get(arc.nextstate, TROPICAL_ZERO):
                distance[arc.nextstate] = candidate
                back[arc.nextstate] = (state, arc)
                heapq.heappush(heap, (candidate, arc.nextstate))
    if best_final is None:
        raise NoPath("The machine has no accepting path.")
    states, arcs, state = [best_final], [], best_final
    while back[state] is not None:
        state, arc = back[state]
        arcs.append(arc)
        states.append(state)

    return _build_path(machine, states[::-1], arcs[::-1])


def shortest_path(machine):
    """Minimum-weight accepting path.

    Acyclic machines are solved exactly, ties going to the
    lexicographically smallest output; machines with cycles fall back to
    Dijkstra, which needs non-negative weights.

    Args:
        machine (Wfst): the machine.

    Returns:
        Path: the best path.

    Raises:
        NoPath: if no final state is reachable.
    """
    if machine.start is None:
        raise NoPath("The machine has no start state.")
    order = machine.topological_order()
    if order is None:
        return _shortest_dijkstra(machine)

    return _shortest_acyclic(machine, order)


def _require_order(machine):
    order = machine.topological_order()
    if order is None:
        raise CyclicMachine("The machine has cycles.")

    return order


def count_paths(machine):
    """ Number of accepting paths of an acyclic machine."""
    if machine.start is None:
        return 0
    counts = {}
    for state in reversed(_require_order(machine)):
        counts[state] = int(machine.is_final(state)) + sum(
            counts[arc.nextstate] for arc in machine.arcs(state)
        )

    return counts[machine.start]


def enumerate_paths(machine, limit=None):
    """Accepting paths of an acyclic machine, depth first.

    Args:
        machine (Wfst): acyclic machine.
        limit (int): stop after this many paths.

    Yields:
        Path: every accepting path.
    """
    if machine.start is None:
        return
    _require_order(machine)
    produced = 0
    stack = [(machine.start, [machine.start], [])]
    while stack:
        state, states, arcs = stack.pop()
        if machine.is_final(state):
            yield _build_path(machine, states, arcs)
            produced += 1
            if limit is not None and produced >= limit:
                return
        for arc in reversed(machine.arcs(state)):
            stack.append(
                (arc.nextstate, states + [arc.nextstate], arcs + [arc])
            )


def random_path(machine, rng_seed=None):
    """Random accepting path.

    At every state the walk picks uniformly among the arcs that can still
    reach a final state, plus stopping when the state is final.

    Args:
        machine (Wfst): the machine.
        rng_seed (int or np.random.Generator): walk seed.

    Returns:
        Path: the sampled path.

    Raises:
        NoPath: if the machine has no accepting path.
    """
    if machine.start is None:
        raise NoPath("The machine has no start state.")
    useful = machine._coreachable()
    if machine.start not in useful:
        raise NoPath("The machine has no accepting path.")
    rng = np.random.default_rng(rng_seed)
    states, arcs, state = [machine.start], [], machine.start
    while True:
        options = [
            arc for arc in machine.arcs(state) if arc.nextstate in useful
        ]
        n_options = len(options) + int(machine.is_final(state))
        choice = int(rng.integers(n_options))
        if choice == len(options):
            break
        arc = options[choice]
        arcs.append(arc)
        state = arc.nextstate
        states.append(state)

    return _build_path(machine, states, arcs)
