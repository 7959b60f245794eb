"""Write-once memory codes: the code abstraction, traces and the Rivest-Shamir code.

Cell states are tuples of ints (0/1 for binary WOM, levels for q-ary cells).
Messages are ints ``0 .. num_messages - 1``; ``code.labels`` maps them to the
human labels used in tables (``"01"`` for Rivest-Shamir, point labels for the
geometric codes). Write indices are 1-based.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from math import log2, prod
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .rm_codes import DecodeError, NoMessageError

State = Tuple[int, ...]


class WomError(ValueError):
    pass


class UnwritableError(WomError):
    """The message has no valid representation above the current state."""

    def __init__(self, msg: str, representable: Iterable[int] = (), step: Optional[int] = None):
        super().__init__(msg)
        self.representable = sorted(representable)
        self.step = step


class WriteBudgetExhausted(UnwritableError):
    pass


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """``a >= b`` componentwise."""
    return all(x >= y for x, y in zip(a, b))


def weight(state: Sequence[int]) -> int:
    return sum(1 for x in state if x)


def state_string(state: Sequence[int]) -> str:
    if any(x > 9 for x in state):
        return ",".join(map(str, state))
    return "".join(map(str, state))


def parse_state(text: str) -> State:
    text = text.strip().strip("()")
    if "," in text:
        return tuple(int(x) for x in text.split(","))
    return tuple(int(c) for c in text)


class WomCode:
    """Base class for t-write WOM codes ``<v_1, ..., v_t>/n``.

    Subclasses provide ``encode`` and ``decode``. Encoders are stateless: the
    caller passes the 1-based write index and the current cell state.
    """

    name: str
    n: int
    messages_per_write: Tuple[int, ...]
    num_messages: int
    labels: Tuple[str, ...]

    @property
    def t(self) -> int:
        return len(self.messages_per_write)

    @property
    def fixed_information(self) -> bool:
        return len(set(self.messages_per_write)) == 1

    def rate(self) -> float:
        return rate(self)

    def zero_state(self) -> State:
        return (0,) * self.n

    def decode(self, state: Sequence[int]) -> int:
        raise NotImplementedError

    def encode(self, write: int, state: Sequence[int], message: int) -> State:
        raise NotImplementedError

    def try_encode(self, write: int, state: Sequence[int], message: int) -> Optional[State]:
        """``encode`` returning None instead of raising for unwritable messages."""
        try:
            return self.encode(write, state, message)
        except UnwritableError:
            return None

    def current_message(self, state: Sequence[int]) -> Optional[int]:
        """Decoded message, or None for states (such as the erased state of a
        geometric code) that carry no message."""
        try:
            return self.decode(state)
        except NoMessageError:
            return None

    def representations(self, message: int) -> Optional[List[State]]:
        """U(message) for table-defined codes; None when not tabulated."""
        return None

    def label(self, message: int) -> str:
        return self.labels[message]

    def parse_message(self, label: str) -> int:
        try:
            return self.labels.index(label.strip())
        except ValueError:
            raise WomError(f"{label!r} is not a message label of {self.name}") from None

    def _check_message(self, message: int) -> None:
        if not 0 <= message < self.num_messages:
            raise WomError(f"message {message} outside 0..{self.num_messages - 1}")

    def __repr__(self) -> str:
        v = ",".join(map(str, self.messages_per_write))
        return f"<{type(self).__name__} {self.name} <{v}>/{self.n}>"


class TableWomCode(WomCode):
    """A WOM code given by explicit per-write representation lists.

    ``table[i][x]`` lists the states that represent message ``x`` on write
    ``i + 1``. The encoder picks, among write-``i`` representations of the new
    message that dominate the current state, the one of least weight, then the
    lexicographically smallest.
    """

    def __init__(
        self,
        name: str,
        n: int,
        table: Sequence[Mapping[int, Sequence[State]]],
        labels: Sequence[str],
        decoder: Optional[Callable[[State], int]] = None,
        messages_per_write: Optional[Sequence[int]] = None,
    ):
        self.name = name
        self.n = n
        self.labels = tuple(labels)
        self.num_messages = len(self.labels)
        self.table = [{x: sorted(set(map(tuple, reps))) for x, reps in col.items()} for col in table]
        self.messages_per_write = tuple(messages_per_write or (len(col) for col in self.table))
        self._state_map: Dict[State, int] = {}
        for col in self.table:
            for x, reps in col.items():
                for u in reps:
                    if self._state_map.setdefault(u, x) != x:
                        raise WomError(f"state {state_string(u)} represents two messages")
        self._decoder = decoder

    def decode(self, state: Sequence[int]) -> int:
        state = tuple(state)
        if self._decoder is not None:
            return self._decoder(state)
        try:
            return self._state_map[state]
        except KeyError:
            raise DecodeError(f"{state_string(state)} is not a state of {self.name}") from None

    def representations(self, message: int) -> List[State]:
        self._check_message(message)
        out = set()
        for col in self.table:
            out.update(col.get(message, ()))
        return sorted(out)

    def encode(self, write: int, state: Sequence[int], message: int) -> State:
        self._check_message(message)
        state = tuple(state)
        if write > 1 and self.current_message(state) == message:
            return state
        if not 1 <= write <= self.t:
            raise WriteBudgetExhausted(f"{self.name} allows {self.t} writes", step=write)
        col = self.table[write - 1]
        options = [u for u in col.get(message, ()) if dominates(u, state)]
        if not options:
            ok = [x for x, reps in col.items() if any(dominates(u, state) for u in reps)]
            raise UnwritableError(
                f"message {self.label(message)} cannot be written on write {write} from {state_string(state)}",
                ok,
            )
        return min(options, key=lambda u: (weight(u), u))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "t": self.t,
            "messages_per_write": list(self.messages_per_write),
            "labels": list(self.labels),
            "table": [
                {self.label(x): [state_string(u) for u in reps] for x, reps in sorted(col.items())}
                for col in self.table
            ],
        }


def code_from_json(desc: Mapping) -> TableWomCode:
    """Rebuild a table code from its JSON descriptor (decoding by table lookup)."""
    labels = list(desc.get("labels") or sorted({lab for col in desc["table"] for lab in col}))
    table = [
        {labels.index(lab): [parse_state(s) for s in states] for lab, states in col.items()}
        for col in desc["table"]
    ]
    return TableWomCode(desc["name"], int(desc["n"]), table, labels, None, desc.get("messages_per_write"))


def dumps_code(code: WomCode) -> str:
    if isinstance(code, TableWomCode):
        return json.dumps(code.to_json(), indent=2)
    raise WomError(f"{code.name} has no explicit table")


RS_LABELS = ("00", "01", "10", "11")
RS_TABLE = {
    # message: (first write, second write)
    "00": ("000", "111"),
    "01": ("100", "011"),
    "10": ("010", "101"),
    "11": ("001", "110"),
}


def rs_decode(state: Sequence[int]) -> int:
    a1, a2, a3 = (int(x) & 1 for x in state)
    return 2 * ((a2 + a3) % 2) + (a1 + a3) % 2


def rivest_shamir() -> TableWomCode:
    table = [
        {RS_LABELS.index(x): [parse_state(pair[w])] for x, pair in RS_TABLE.items()}
        for w in range(2)
    ]
    return TableWomCode("RS", 3, table, RS_LABELS, decoder=rs_decode)


def rate(code: WomCode) -> float:
    return log2(prod(code.messages_per_write)) / code.n


def representation_set(code: WomCode, message: int) -> List[State]:
    """U(x): every state that represents ``message`` on some write."""
    reps = code.representations(message)
    if reps is not None:
        return reps
    from .geo_wom import reachable_states

    return sorted(s for s, _ in reachable_states(code) if code.current_message(s) == message)


@dataclass
class TraceStep:
    step: int
    message: int
    state: State
    write: int
    cells_increased: int
    max_level: int
    noop: bool = False


@dataclass
class WriteTrace:
    code_name: str
    labels: Tuple[str, ...]
    steps: List[TraceStep] = field(default_factory=list)

    @property
    def states(self) -> List[State]:
        return [s.state for s in self.steps if not s.noop]

    @property
    def writes(self) -> int:
        return sum(1 for s in self.steps if not s.noop)

    def costs(self) -> List[Tuple[int, int]]:
        return [(s.cells_increased, s.max_level) for s in self.steps if not s.noop]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "message", "state", "cells_increased", "max_level"])
        for s in self.steps:
            w.writerow([s.step, self.labels[s.message], state_string(s.state), s.cells_increased, s.max_level])
        return buf.getvalue()


def run_trace(
    name: str,
    labels: Sequence[str],
    start: State,
    messages: Sequence[int],
    step_fn: Callable[[int, State, int], State],
    current: Callable[[State], Optional[int]],
) -> WriteTrace:
    """Drive ``step_fn(write, state, message)`` over a message sequence.

    A message equal to the last written one is a no-op; the erased start state
    has no last written message, so the first message always uses write 1.
    """
    trace = WriteTrace(name, tuple(labels))
    state, write, last = start, 0, None
    for i, y in enumerate(messages, 1):
        if last is not None and y == last:
            trace.steps.append(TraceStep(i, y, state, write, 0, max(state), noop=True))
            continue
        try:
            new = step_fn(write + 1, state, y)
        except UnwritableError as exc:
            raise type(exc)(f"step {i}: {exc}", exc.representable, i) from exc
        if not dominates(new, state):
            raise WomError(f"step {i}: encoder decreased a cell")
        write += 1
        inc = sum(1 for a, b in zip(new, state) if a != b)
        trace.steps.append(TraceStep(i, y, new, write, inc, max(new)))
        state, last = new, y
        if current(state) != y:
            raise WomError(f"step {i}: state {state_string(state)} does not decode to the written message")
    return trace


def encode_sequence(code: WomCode, messages: Sequence[int], start: Optional[State] = None) -> WriteTrace:
    return run_trace(
        code.name,
        code.labels,
        tuple(start) if start is not None else code.zero_state(),
        list(messages),
        code.encode,
        code.current_message,
    )
