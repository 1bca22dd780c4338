"""Core model of multi-player reachability/safety (MPRS) games.

A game is played on a finite digraph by players who take turns steering a
shared token: whoever owns the current vertex picks its successor along an
outgoing edge. Every player is either a reacher, who wants the token to
enter their own target set, or an avoider, who wants to keep it out
forever. One step after the token lands on any player's target vertex the
game falls into an absorbing terminal state and nothing further happens.

`validate_game` checks a raw `GameSpec` and returns the immutable `Game`
handle consumed by every other module. `owner_of`, `actions`, `transition`
and `turn_payoff` define who moves, which moves are available, where the
token goes, and what each visited state is worth to each player.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping


class Role(Enum):
    """Objective of a player: enter the target set, or keep out of it."""

    REACHER = "reacher"
    AVOIDER = "avoider"


@dataclass(frozen=True)
class State:
    """A game state: the token at a vertex, or the absorbing terminal state."""

    vertex: str | None = None

    @classmethod
    def at(cls, vertex: str) -> "State":
        return cls(vertex)

    @property
    def is_terminal(self) -> bool:
        return self.vertex is None

    def __repr__(self) -> str:
        return "Terminal" if self.vertex is None else f"At({self.vertex!r})"

    def __str__(self) -> str:
        return "<terminal>" if self.vertex is None else self.vertex


TERMINAL = State(None)


@dataclass(frozen=True)
class Action:
    """A move of the token to a named vertex, or the do-nothing action.

    Only the owner of a non-target vertex ever has real moves; everyone
    else, and everyone once the token sits on a target vertex or in the
    terminal state, can only play the trivial action.
    """

    target: str | None = None

    @classmethod
    def move(cls, target: str) -> "Action":
        return cls(target)

    @property
    def is_trivial(self) -> bool:
        return self.target is None

    def __repr__(self) -> str:
        return "Trivial" if self.target is None else f"Move({self.target!r})"


TRIVIAL = Action(None)


@dataclass
class GameSpec:
    """Raw, unchecked description of a game; feed it to `validate_game`.

    Attributes:
        vertices: vertex ids (opaque strings, compared lexicographically).
        edges: directed edges as (source, destination) pairs.
        owner: vertex id to the id of the player who moves there.
        roles: player id (consecutive integers from 1) to objective.
        targets: player id to that player's nonempty target set.
        gamma: discount factor, an exact rational strictly between 0 and 1.
    """

    vertices: Iterable[str]
    edges: Iterable[tuple[str, str]]
    owner: Mapping[str, int]
    roles: Mapping[int, Role]
    targets: Mapping[int, Iterable[str]]
    gamma: Fraction | int | float | str = Fraction(1, 2)


class ViolationKind(Enum):
    DANGLING_EDGE = "dangling_edge"
    UNOWNED_VERTEX = "unowned_vertex"
    UNKNOWN_VERTEX = "unknown_vertex"
    MULTIPLY_OWNED = "multiply_owned"
    UNKNOWN_PLAYER = "unknown_player"
    BAD_PLAYERS = "bad_players"
    EMPTY_TARGET_SET = "empty_target_set"
    TARGET_OUTSIDE_GRAPH = "target_outside_graph"
    DEAD_END = "dead_end"
    BAD_GAMMA = "bad_gamma"


@dataclass(frozen=True)
class Violation:
    """One reason a `GameSpec` is not a playable game."""

    kind: ViolationKind
    detail: str

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.detail}"


class InvalidGameError(ValueError):
    """Raised by `validate_game`; carries the complete list of violations."""

    def __init__(self, violations: Iterable[Violation]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class IllegalActionError(ValueError):
    """An action was played at a state where it is not available."""


@dataclass(frozen=True)
class Game:
    """A validated, immutable game. Build instances via `validate_game`."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    owner: Mapping[str, int]
    roles: Mapping[int, Role]
    targets: Mapping[int, frozenset[str]]
    gamma: Fraction
    players: tuple[int, ...] = field(repr=False)
    total_target: frozenset[str] = field(repr=False)
    choice_vertices: tuple[str, ...] = field(repr=False)
    states: tuple[State, ...] = field(repr=False)
    _succ: Mapping[str, tuple[str, ...]] = field(repr=False)

    def role(self, n: int) -> Role:
        return self.roles[n]

    def successors(self, v: str) -> tuple[str, ...]:
        """Out-neighbours of `v` in lexicographic order."""
        return self._succ[v]

    def is_target(self, v: str) -> bool:
        """True when `v` lies in any player's target set."""
        return v in self.total_target


def validate_game(spec: GameSpec) -> Game:
    """Check every game invariant and return the immutable handle.

    All violations are collected before failing, so a rejected spec
    reports everything wrong with it at once.

    Raises:
        InvalidGameError: with the full violation list, if any check fails.
    """
    violations: list[Violation] = []

    vertices = sorted({str(v) for v in spec.vertices})
    vset = frozenset(vertices)

    players = sorted(spec.roles)
    count = len(players)
    if count == 0:
        violations.append(
            Violation(ViolationKind.BAD_PLAYERS, "at least one player is required")
        )
    elif players != list(range(1, count + 1)):
        violations.append(
            Violation(
                ViolationKind.BAD_PLAYERS,
                f"player ids must be 1..N, got {players}",
            )
        )
    roles = {n: Role(spec.roles[n]) for n in players}

    edges = set()
    for edge in spec.edges:
        u, w = edge
        u, w = str(u), str(w)
        edges.add((u, w))
        for end in (u, w):
            if end not in vset:
                violations.append(
                    Violation(
                        ViolationKind.DANGLING_EDGE,
                        f"edge ({u}, {w}) mentions undeclared vertex {end!r}",
                    )
                )

    owner: dict[str, int] = {}
    for v, n in spec.owner.items():
        v = str(v)
        if v not in vset:
            violations.append(
                Violation(
                    ViolationKind.UNKNOWN_VERTEX,
                    f"owner map mentions undeclared vertex {v!r}",
                )
            )
            continue
        if n not in roles:
            violations.append(
                Violation(
                    ViolationKind.UNKNOWN_PLAYER,
                    f"vertex {v!r} is owned by undeclared player {n!r}",
                )
            )
            continue
        owner[v] = n
    for v in vertices:
        if v not in owner:
            violations.append(
                Violation(ViolationKind.UNOWNED_VERTEX, f"vertex {v!r} has no owner")
            )

    targets: dict[int, frozenset[str]] = {}
    for n in spec.targets:
        if n not in roles:
            violations.append(
                Violation(
                    ViolationKind.UNKNOWN_PLAYER,
                    f"target set declared for undeclared player {n!r}",
                )
            )
    for n in players:
        tset = frozenset(str(v) for v in spec.targets.get(n, ()))
        for v in sorted(tset - vset):
            violations.append(
                Violation(
                    ViolationKind.TARGET_OUTSIDE_GRAPH,
                    f"target vertex {v!r} of player {n} is not in the graph",
                )
            )
        if not tset:
            violations.append(
                Violation(
                    ViolationKind.EMPTY_TARGET_SET,
                    f"player {n} has an empty target set",
                )
            )
        targets[n] = tset & vset

    total_target = frozenset().union(*targets.values()) if targets else frozenset()

    succ: dict[str, list[str]] = {v: [] for v in vertices}
    for u, w in edges:
        if u in vset and w in vset:
            succ[u].append(w)
    for v in vertices:
        if v not in total_target and not succ[v]:
            violations.append(
                Violation(
                    ViolationKind.DEAD_END,
                    f"non-target vertex {v!r} has no outgoing edge",
                )
            )

    try:
        gamma = Fraction(spec.gamma)
    except (ValueError, TypeError, ZeroDivisionError):
        gamma = None
    if gamma is None or not (0 < gamma < 1):
        violations.append(
            Violation(
                ViolationKind.BAD_GAMMA,
                f"discount factor must be a rational strictly between 0 and 1,"
                f" got {spec.gamma!r}",
            )
        )
        gamma = Fraction(1, 2)

    if violations:
        raise InvalidGameError(sorted(violations, key=lambda x: (x.kind.value, x.detail)))

    return Game(
        vertices=tuple(vertices),
        edges=tuple(sorted(edges)),
        owner=owner,
        roles=roles,
        targets=targets,
        gamma=gamma,
        players=tuple(players),
        total_target=total_target,
        choice_vertices=tuple(v for v in vertices if v not in total_target),
        states=tuple(State.at(v) for v in vertices) + (TERMINAL,),
        _succ={v: tuple(sorted(ws)) for v, ws in succ.items()},
    )


def owner_of(game: Game, s: State) -> int:
    """The player who moves at `s`; the terminal state belongs to player 1."""
    if s.is_terminal:
        return 1
    return game.owner[s.vertex]


def actions(game: Game, s: State, n: int) -> tuple[Action, ...]:
    """Actions available to player `n` at state `s`, deterministically ordered.

    The owner of a non-target vertex chooses among its out-edges; every
    other player there, and every player at target vertices and at the
    terminal state, has exactly the trivial action.
    """
    if n not in game.roles:
        raise ValueError(f"unknown player {n!r}")
    if not s.is_terminal:
        v = s.vertex
        if v not in game.owner:
            raise ValueError(f"unknown vertex {v!r}")
        if v not in game.total_target and game.owner[v] == n:
            return tuple(Action.move(w) for w in game.successors(v))
    return (TRIVIAL,)


def transition(game: Game, s: State, a: Action) -> State:
    """Apply the owner's action `a` at state `s`.

    Trivial actions at target vertices and at the terminal state drop the
    token into (or keep it in) the terminal state; a move at a non-target
    vertex follows the chosen edge.

    Raises:
        IllegalActionError: if `a` is not available to the owner at `s`.
    """
    if s.is_terminal:
        if a.is_trivial:
            return TERMINAL
        raise IllegalActionError("only the trivial action exists at the terminal state")
    v = s.vertex
    if v not in game.owner:
        raise ValueError(f"unknown vertex {v!r}")
    if v in game.total_target:
        if a.is_trivial:
            return TERMINAL
        raise IllegalActionError(f"target vertex {v!r} admits only the trivial action")
    if a.is_trivial:
        raise IllegalActionError(f"the owner of {v!r} must pick an outgoing edge")
    if a.target not in game.successors(v):
        raise IllegalActionError(f"no edge from {v!r} to {a.target!r}")
    return State.at(a.target)


def turn_payoff(game: Game, n: int, s: State) -> int:
    """Per-turn reward of player `n` for the token visiting `s`.

    Reachers collect +1 on their own target vertices, avoiders collect -1
    there; every other state, including the terminal one, is worth 0.
    """
    if s.is_terminal or s.vertex not in game.targets[n]:
        return 0
    return 1 if game.roles[n] is Role.REACHER else -1
