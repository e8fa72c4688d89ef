# cut_requirements.py

# Import necessary libraries
import logging
from dataclasses import dataclass, field  # For immutable requirement containers
from functools import lru_cache  # For memoising lazily composed cut functions
from typing import Callable, Optional  # For cut function field annotations
from graph_cuts import all_subsets, count_crossing, cut_edges, cut_weight, proper_subsets  # For cut primitives
from design_errors import InvalidRestriction, SizeLimitExceeded  # For domain errors

# Global configuration
DEFAULT_MAX_PAIR_NODES = 10  # Largest ground set for the exhaustive pair checker
DEFAULT_MAX_NODES = 20  # Largest ground set for single-subset enumerations

# 1. Requirement Containers Module
@dataclass(frozen=True)
class SndpRequirements:
    """
    Connectivity requirements (s_i, t_i, r_i), i = 1..k.

    An empty tuple is allowed and means f is identically zero.
    """
    pairs: tuple = ()

    def __post_init__(self):
        pairs = tuple((int(s), int(t), int(r)) for s, t, r in self.pairs)
        for s, t, r in pairs:
            if s == t:
                raise ValueError(f"Requirement endpoints must differ, got ({s}, {t}).")
            if r < 1:
                raise ValueError(f"Requirement value must be positive, got {r}.")
        object.__setattr__(self, 'pairs', pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def terminals(self):
        return frozenset(v for s, t, _ in self.pairs for v in (s, t))

    @property
    def max_requirement(self):
        return max((r for _, _, r in self.pairs), default=0)

    @classmethod
    def all_pairs(cls, n, k):
        """Uniform requirement k between every pair of nodes, which is k-ECSS."""
        return cls(tuple((s, t, k) for s in range(n) for t in range(s + 1, n)))


@dataclass(frozen=True)
class GraceProfile:
    """
    Non-increasing tolerance profile tau(0), tau(1), ... with tau = 0 past the prefix.

    If `pi` is given, sets are measured by pi(S) instead of |S|; pi must be monotone
    and positive on nonempty sets.
    """
    tau: tuple
    pi: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        tau = tuple(int(t) for t in self.tau)
        if any(t < 0 for t in tau):
            raise ValueError("Tolerance profile entries must be nonnegative.")
        for level in range(len(tau) - 1):
            if tau[level + 1] > tau[level]:
                raise ValueError(f"Tolerance profile increases at level {level + 1}.")
        object.__setattr__(self, 'tau', tau)

    def level(self, ell):
        return self.tau[ell] if ell < len(self.tau) else 0

    def size(self, S):
        """|S|, or pi(S) when pi is supplied."""
        return len(S) if self.pi is None else self.pi(frozenset(S))


@dataclass(frozen=True, eq=False)
class CutFunction:
    """
    Lazily evaluated cut-requirement function on subsets of `domain`.

    `kind` tags the construction (SNDP, KECSS, GRACE, GRACE_PI, SYM, RESIDUAL,
    RESTRICTION, CR). `sndp` is set when values agree with f^SNDP of those
    requirements, which enables the min-cut based max-deficiency oracle.
    """
    domain: frozenset
    kind: str
    evaluator: Callable
    base: Optional['CutFunction'] = None
    edges: frozenset = frozenset()
    sndp: Optional[SndpRequirements] = None

    def __call__(self, S):
        return self.evaluator(frozenset(S))


# 2. Base Family Evaluators
def sndp_eval(reqs, S):
    """Largest r_i over pairs separated by S (0 when none is separated)."""
    S = frozenset(S)
    return max((r for s, t, r in reqs if (s in S) != (t in S)), default=0)


def kecss_eval(k, S, V):
    """k on proper nonempty subsets of V, 0 on the empty set and V."""
    S = frozenset(S)
    return 0 if not S or S == frozenset(V) else k


def grace_eval(profile, S):
    """
    Smallest level ell with tau(ell) < |S| (or < pi(S)).

    Args:
    - profile (GraceProfile): The tolerance profile.
    - S (iterable of int): The node set.

    Returns:
    - int: The requirement of S; 0 for the empty set.

    Raises:
    - ValueError: If pi(S) is not positive on a nonempty S.
    """
    S = frozenset(S)
    if not S:
        return 0
    size = profile.size(S)
    if size <= 0:
        raise ValueError(f"pi must be positive on nonempty sets, got {size}.")
    ell = 0
    while profile.level(ell) >= size:
        ell += 1
    return ell


def sndp_function(reqs, n):
    """f^SNDP on subsets of 0..n-1."""
    reqs = reqs if isinstance(reqs, SndpRequirements) else SndpRequirements(tuple(reqs))
    return CutFunction(frozenset(range(n)), 'SNDP', lambda S: sndp_eval(reqs, S), sndp=reqs)


def kecss_function(k, n):
    V = frozenset(range(n))
    return CutFunction(V, 'KECSS', lambda S: kecss_eval(k, S, V), sndp=SndpRequirements.all_pairs(n, k) if k >= 1 else None)


def grace_function(profile, n):
    kind = 'GRACE' if profile.pi is None else 'GRACE_PI'
    return CutFunction(frozenset(range(n)), kind, lambda S: grace_eval(profile, S))


# 3. Cut Function Algebra Module
def symmetrize(f, V=None):
    """
    Return S -> max{f(S), f(V - S)}, normalised to 0 on the empty set and V.

    Args:
    - f (CutFunction): The base function.
    - V (frozenset or None): Ground set; defaults to f.domain.

    Returns:
    - CutFunction: The symmetric, normalised function.
    """
    V = frozenset(f.domain if V is None else V)

    def value(S):
        if not S or S == V:
            return 0
        return max(f(S), f(V - S))

    return CutFunction(V, 'SYM', value, base=f, sndp=f.sndp)


def residual(f, G, Z):
    """
    Return S -> f(S) - |delta_Z(S)|.

    Residuals of residuals with disjoint edge sets collapse to one residual on the union;
    with overlapping sets the shared edges are subtracted twice, so they stay nested.
    """
    Z = frozenset(Z)
    if not Z:
        return f
    base = f
    if f.kind == 'RESIDUAL' and f.edges.isdisjoint(Z):
        base, Z = f.base, f.edges | Z
    ordered = tuple(sorted(Z))

    def value(S):
        return base(S) - count_crossing(G, ordered, S)

    return CutFunction(base.domain, 'RESIDUAL', value, base=base, edges=Z)


def restrict(f, G, S):
    """
    Restriction of a symmetric normalised f to S.

    With P = f.domain, Z the edges of G[P] crossing S and S' = P - S:
    f_S(T) = max{f(T) - |delta_Z(T)|, f(T + S') - |delta_Z(T + S')|}, and f_S is 0 on the
    empty set and on S.

    Args:
    - f (CutFunction): Symmetric, normalised function on P.
    - G (Multigraph): Graph in the labels of P.
    - S (iterable of int): Nonempty proper subset of P.

    Returns:
    - CutFunction: The restriction, with domain S.

    Raises:
    - InvalidRestriction: If S is empty, equals P, or is not inside P.
    """
    P = f.domain
    S = frozenset(S)
    if not S or S == P or not S <= P:
        raise InvalidRestriction(f"Cannot restrict to a set of size {len(S)} inside a ground set of size {len(P)}.")
    Z = tuple(cut_edges(G, S, within=P))
    rest = P - S

    @lru_cache(maxsize=None)
    def value(T):
        if not T <= S:
            raise ValueError("Restriction evaluated outside its domain.")
        if not T or T == S:
            return 0
        outer = T | rest
        return max(f(T) - count_crossing(G, Z, T), f(outer) - count_crossing(G, Z, outer))

    return CutFunction(S, 'RESTRICTION', value, base=f, edges=frozenset(Z))


def cut_relative_requirement(f, G):
    """S -> min{f(S), |delta_G(S)|}, the requirement enforced in the cut-relative model."""
    return CutFunction(f.domain, 'CR', lambda S: min(f(S), cut_weight(G, S)), base=f)


def deficiency(f, G, w, S, within=None):
    """
    f(S) - w(delta_G(S)); w=None means unit weights.

    `within` evaluates the cut inside G[within]; it defaults to f.domain.
    """
    within = f.domain if within is None else within
    return f(S) - cut_weight(G, S, w, within=within)


def small_cuts(f, G, max_nodes=DEFAULT_MAX_NODES):
    """All proper subsets S of f.domain with positive unit deficiency, in bitmask order."""
    if len(f.domain) > max_nodes:
        raise SizeLimitExceeded(f"Small-cut enumeration is capped at {max_nodes} nodes.")
    return [S for S in proper_subsets(f.domain) if deficiency(f, G, None, S) > 0]


# 4. Weak Supermodularity Checker
def is_weakly_supermodular(f, V=None, max_nodes=DEFAULT_MAX_PAIR_NODES):
    """
    Exhaustively test f(A)+f(B) <= max{f(A&B)+f(A|B), f(A-B)+f(B-A)}.

    Args:
    - f (CutFunction): The function.
    - V (frozenset or None): Ground set; defaults to f.domain.
    - max_nodes (int): Cap on |V|.

    Returns:
    - tuple: (True, None) or (False, (A, B)) with a violating pair.

    Raises:
    - SizeLimitExceeded: If |V| exceeds max_nodes.
    """
    V = f.domain if V is None else frozenset(V)
    if len(V) > max_nodes:
        raise SizeLimitExceeded(f"Pair check is capped at {max_nodes} nodes, got {len(V)}.")
    subsets = list(all_subsets(V))
    values = [f(S) for S in subsets]
    count = len(subsets)
    for a in range(count):
        for b in range(a, count):
            lhs = values[a] + values[b]
            bound = max(values[a & b] + values[a | b], values[a & ~b] + values[b & ~a])
            if lhs > bound:
                logging.debug(f"Weak supermodularity fails on {sorted(subsets[a])}, {sorted(subsets[b])}.")
                return False, (subsets[a], subsets[b])
    return True, None
