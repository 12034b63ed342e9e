"""Path construction between an element and a fixed far-away target.

The construction walks from ``g`` to
``xh_1^-E xh_2 xh_1^E x_1^-E x_2 x_1^E`` (``E = Q n``) in six segments
and records everything needed to check the result afterwards: segment
lengths against their budgets, the endpoint, the origin rectangle sizes
along the second segment and per-prefix distance evidence, taken on the
exponent-capped rebuild when the full path is too long.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, NamedTuple

from app.core.config import settings
from app.core.errors import (
    BudgetExceeded,
    DecompositionUnavailable,
    EssentialityLost,
    NoEssentialOrigin,
    NoIdentityHalf,
    NotWithinRadius,
    PreconditionViolated,
)
from app.models.cantor import DyadicRect, is_origin_rect, rect_size
from app.models.element import (
    Element,
    compose,
    image_of,
    inverse,
    is_identity,
    is_identity_on,
    preimage_of,
    reduce_pair,
    support_disjoint,
    transpose,
    with_range_rect,
)
from app.models.gridform import (
    canonical_key,
    element_fineness,
    equals,
    find_essential_origin,
    is_essential,
    length_lower_bound,
)
from app.models.treealg import decompose_PPiQ, extract_C_prefix, minimal_pair
from app.models.word import GroupWord, Letter, mirror_word
from app.schemas.certificates import (
    DivergenceParams,
    DivergenceResult,
    LengthCertificate,
    PathCertificate,
    PrefixEvidence,
    SubpathRecord,
)
from app.services.genset import GeneratorTable
from app.services.metric import BallTable, MetricService

logger = logging.getLogger(__name__)

Orientation = Literal["vertical", "horizontal"]
Case = Literal["A", "B", "C", "D"]


# Origin rectangle tracking


class _Rule(NamedTuple):
    pre: tuple[str, str]
    post: tuple[str, str]
    delta: int


# Containment of the origin rectangle before and after multiplying by a letter,
# as prefix pairs, and the change of its size.
LEMMA_TABLE: dict[Letter, _Rule] = {
    Letter("x_0", -1): _Rule(("00", ""), ("000", ""), 1),
    Letter("Bh_0", 1): _Rule(("00", ""), ("000", ""), 1),
    Letter("C_0", 1): _Rule(("00", "0"), ("000", ""), 0),
    Letter("y_0", -1): _Rule(("", "00"), ("", "000"), 1),
    Letter("gamma_0", 1): _Rule(("", "00"), ("", "000"), 1),
    Letter("C_0", -1): _Rule(("0", "00"), ("", "000"), 0),
}


def _inside(r: DyadicRect, region: tuple[str, str]) -> bool:
    return r.w1.startswith(region[0]) and r.w2.startswith(region[1])


@dataclass
class OriginTracker:
    """The rectangle at the origin of a chosen pair, followed through products.

    Attributes:
        element: Current element.
        pair: A pair for ``element`` with ``origin`` in its range.
        origin: The origin rectangle of the range pattern.
        essential: Whether ``origin`` is essential in ``pair``.
        sizes: Size of the origin rectangle after every step.
    """

    element: Element
    pair: Element
    origin: DyadicRect
    essential: bool
    sizes: list[int] = field(default_factory=list)

    @classmethod
    def start(cls, g: Element, origin: DyadicRect | None = None) -> "OriginTracker":
        """Begin tracking at ``origin``, or at the essential origin of ``g``.

        Raises:
            NoEssentialOrigin: If ``g^-1`` does not transport ``origin``.
        """
        if origin is None:
            pair, origin = find_essential_origin(g)
        elif preimage_of(g, origin) is None:
            raise NoEssentialOrigin(f"{origin} is not a rectangle of any pair for the element")
        else:
            pair = with_range_rect(reduce_pair(g), origin)
        essential = is_essential(pair, origin) is not None
        return cls(g, pair, origin, essential, [rect_size(origin)])


def lemma31_step(state: OriginTracker, letter: Letter, generator: Element) -> OriginTracker:
    """Multiply by one tracked letter and check the origin rectangle rules.

    Args:
        state: Current tracker; its origin must be essential.
        letter: One of ``x_0^-1``, ``Bh_0``, ``C_0``, ``y_0^-1``, ``gamma_0``, ``C_0^-1``.
        generator: The element of ``letter`` (inverse already applied).

    Returns:
        The tracker for ``state.element * letter``.

    Raises:
        PreconditionViolated: If the origin rectangle is not where the rule needs it.
        EssentialityLost: If the product breaks containment, size or essentiality.
    """
    rule = LEMMA_TABLE.get(letter)
    if rule is None:
        raise PreconditionViolated(f"{letter} is not a tracked letter")
    if not state.essential:
        raise PreconditionViolated("origin rectangle is not essential")
    if not _inside(state.origin, rule.pre):
        raise PreconditionViolated(f"origin {state.origin} is outside the region required by {letter}")
    image = image_of(generator, state.origin)
    if image is None or not is_origin_rect(image):
        raise EssentialityLost(f"{letter} does not carry the origin rectangle {state.origin}")
    product = reduce_pair(compose(state.element, generator))
    pair = with_range_rect(product, image)
    size = rect_size(image)
    if not _inside(image, rule.post) or size != rect_size(state.origin) + rule.delta:
        raise EssentialityLost(f"{letter} moved the origin rectangle to {image}")
    if is_essential(pair, image) is None:
        raise EssentialityLost(f"origin rectangle {image} is not essential after {letter}")
    return OriginTracker(product, pair, image, True, [*state.sizes, size])


# Word builders


def _run(symbol: str, exponent: int) -> list[Letter]:
    return list(GroupWord.power(symbol, exponent).letters)


def conjugate_word(base: str, inner: str, exponent: int) -> GroupWord:
    """``base^-exponent inner base^exponent``."""
    return GroupWord((*_run(base, -exponent), Letter(inner, 1), *_run(base, exponent)))


OMEGA4_SYMBOLS: dict[str, tuple[str, str, int]] = {
    "A": ("hxh_1", "hxh_2", 1),
    "B": ("hx_1", "hx_2", 1),
    "C": ("xh_1", "xh_2", 0),
    "D": ("x_1", "x_2", 0),
}


def omega4_word(case: str, exponent: int) -> GroupWord:
    """The fourth segment for a case, with ``exponent = Q n``."""
    base, inner, shift = OMEGA4_SYMBOLS[case]
    return conjugate_word(base, inner, exponent + shift)


def target_word(exponent: int) -> GroupWord:
    return omega4_word("C", exponent) + omega4_word("D", exponent)


def subpath6(case: str, exponent: int) -> GroupWord:
    """Word joining ``omega4(case)`` to the target."""
    if case == "A":
        return omega4_word("B", exponent) + omega4_word("C", exponent)
    if case == "B":
        return omega4_word("A", exponent) + omega4_word("C", exponent)
    if case == "C":
        return omega4_word("D", exponent)
    return omega4_word("C", exponent)


def c_prefix_prelude(indices: list[int]) -> GroupWord:
    """Letters of the second segment before the ``x_0^-(E - m_p)`` run."""
    letters: list[Letter] = []
    rest = indices
    if indices and indices[0] == 0:
        letters.append(Letter("C_0", 1))
        rest = indices[1:]
    prev = 0
    for m in rest:
        letters.extend(_run("x_0", -(m - prev - 1)))
        letters.append(Letter("Bh_0", 1))
        prev = m
    return GroupWord(tuple(letters))


def c_prefix_rewrite(indices: list[int]) -> GroupWord:
    """Right-hand side of ``C_m1 ... C_mp = x_0^-(m1-1) Bh_0 ... Bh_0 x_0^mp`` (``m1 >= 1``)."""
    return c_prefix_prelude(indices) + GroupWord.power("x_0", indices[-1] if indices else 0)


def omega2_word(indices: list[int], exponent: int) -> GroupWord:
    """The second segment for a ``C`` prefix and ``exponent = M n``.

    Raises:
        PreconditionViolated: If ``exponent < m_p``.
    """
    m_p = indices[-1] if indices else 0
    if exponent < m_p:
        raise PreconditionViolated(f"exponent {exponent} is below m_p={m_p}")
    prelude = c_prefix_prelude(indices)
    return prelude + conjugate_word("x_0", "x_1", exponent - m_p) + prelude.inverse()


# Segments


@dataclass
class Subpath1Result:
    word: GroupWord
    element: Element
    case: str
    orientation: Orientation
    origin: DyadicRect


def _alpha_keeps_essential(g: Element, origin: DyadicRect, alpha: Element) -> bool:
    image = image_of(alpha, origin)
    if image is None:
        return False
    product = reduce_pair(compose(g, alpha))
    if preimage_of(product, image) is None:
        return False
    return is_essential(with_range_rect(product, image), image) is not None


def _subpath1_vertical(g: Element, origin: DyadicRect, table: GeneratorTable) -> tuple[str, GroupWord, DyadicRect]:
    a, b = len(origin.w1), len(origin.w2)
    if a >= 2:
        return "a", GroupWord(), origin
    if b == 0:
        return "b", GroupWord.letter("xh_1"), DyadicRect("00", "")
    expected = DyadicRect("00", "0" * (b - 1))
    keeps = _alpha_keeps_essential(g, origin, table.resolve("alpha_0"))
    if b == 1:
        if keeps:
            return "c", GroupWord.letter("alpha_0"), expected
        return "d", GroupWord.parse("B_0 pi_1 x_0^-1"), expected
    if keeps:
        return "e", GroupWord.letter("alpha_0"), expected
    # [0,1/2] x [0,1/2^b] with b >= 2; alpha_1 carries both parents of the
    # origin onto parents of its image, so essentiality is kept.
    logger.debug("subpath1 case f read as the 1/2^i strip", extra={"b": b})
    return "f", GroupWord.letter("alpha_1"), DyadicRect("00", "0" * (b - 2))


def subpath1(g: Element, table: GeneratorTable) -> Subpath1Result:
    """First segment: push the essential origin rectangle into the left quarter.

    Raises:
        NoEssentialOrigin: If ``g`` is trivial.
        EssentialityLost: If the expected origin rectangle of ``g * omega1`` is not essential.
    """
    _, origin = find_essential_origin(g)
    if origin.w1:
        orientation: Orientation = "vertical"
        case, word, expected = _subpath1_vertical(g, origin, table)
    else:
        orientation = "horizontal"
        flipped = DyadicRect(origin.w2, origin.w1)
        case, word, expected = _subpath1_vertical(transpose(g), flipped, table)
        word = mirror_word(word)
        expected = DyadicRect(expected.w2, expected.w1)
    g1 = reduce_pair(compose(g, table.word_to_element(word)))
    if preimage_of(g1, expected) is None or is_essential(with_range_rect(g1, expected), expected) is None:
        raise EssentialityLost(f"origin {expected} is not essential after the first segment (case {case})")
    logger.info("subpath1", extra={"case": case, "orientation": orientation, "word": str(word)})
    return Subpath1Result(word, g1, case, orientation, expected)


@dataclass
class Subpath2Result:
    word: GroupWord
    element: Element
    c_prefix: list[int]
    exponent: int


def subpath2(
    g1: Element,
    n_hat1: int,
    params: DivergenceParams,
    table: GeneratorTable,
    orientation: Orientation = "vertical",
    exponent_cap: int | None = None,
    budget: int | None = None,
) -> Subpath2Result:
    """Second segment: conjugate ``x_1`` far to the right of the ``C`` prefix.

    Args:
        g1: End of the first segment.
        n_hat1: Certified length bound of ``g1``.
        params: Path constants.
        table: Generating set.
        orientation: ``horizontal`` builds the word on the transposed element
            and mirrors it.
        exponent_cap: Replace ``M n_hat1`` by this value when smaller.
        budget: Target depth budget of the minimal pair search.

    Returns:
        The word, its endpoint and the ``C`` prefix it used.

    Raises:
        DecompositionUnavailable: If no minimal pair is found within ``budget``.
    """
    subject = g1 if orientation == "vertical" else transpose(g1)
    try:
        tp = minimal_pair(subject, budget if budget is not None else settings.MINIMAL_PAIR_BUDGET)
    except BudgetExceeded as exc:
        raise DecompositionUnavailable(str(exc)) from exc
    _, _, q = decompose_PPiQ(tp)
    indices = extract_C_prefix(q)
    m_p = indices[-1] if indices else 0
    if m_p > 4 * n_hat1:
        logger.warning("C prefix longer than the length bound allows", extra={"m_p": m_p, "n_hat1": n_hat1})
    exponent = params.M * n_hat1
    if exponent_cap is not None:
        exponent = max(min(exponent, exponent_cap), m_p)
    word = omega2_word(indices, exponent)
    if orientation == "horizontal":
        word = mirror_word(word)
    g2 = reduce_pair(compose(g1, table.word_to_element(word)))
    logger.info("subpath2", extra={"c_prefix": indices, "exponent": exponent, "length": len(word)})
    return Subpath2Result(word, g2, indices, exponent)


def subpath3_5(target: Element, fallback: GroupWord, metric: MetricService | None, max_radius: int) -> GroupWord:
    """Word for ``target``: a geodesic when the ball holds it, else ``fallback``.

    Raises:
        NotWithinRadius: If there is neither a geodesic nor a fallback.
    """
    if metric is not None:
        try:
            return metric.geodesic_word(target, max_radius)
        except NotWithinRadius:
            if not fallback and not is_identity(reduce_pair(target)):
                raise
    return fallback


HALVES: dict[str, DyadicRect] = {
    "C": DyadicRect("0", ""),
    "D": DyadicRect("1", ""),
    "A": DyadicRect("", "0"),
    "B": DyadicRect("", "1"),
}


def subpath4(g3: Element, exponent: int, table: GeneratorTable) -> tuple[GroupWord, Case]:
    """Fourth segment: a far conjugate supported where ``g3`` is the identity.

    Halves are tried in the order left, right, bottom, top.

    Raises:
        NoIdentityHalf: If ``g3`` moves points in every half.
    """
    for case, half in HALVES.items():
        if not is_identity_on(g3, half):
            continue
        word = omega4_word(case, exponent)
        conjugate = table.word_to_element(omega4_word(case, 1))
        if not support_disjoint(g3, conjugate, element_fineness(g3)):
            raise NoIdentityHalf(f"case {case} support meets the support of g3")
        logger.info("subpath4", extra={"case": case, "length": len(word)})
        return word, case  # type: ignore[return-value]
    raise NoIdentityHalf("g3 is not the identity on any half of the square")


# Service


@dataclass
class _Construction:
    n_hat: int
    s1: Subpath1Result
    s2: Subpath2Result
    omega3: GroupWord
    omega4: GroupWord
    omega5: GroupWord
    omega6: GroupWord
    case: Case
    tracker_sizes: list[int]

    @property
    def segments(self) -> list[tuple[str, GroupWord]]:
        return [
            ("omega1", self.s1.word),
            ("omega2", self.s2.word),
            ("omega3", self.omega3),
            ("omega4", self.omega4),
            ("omega5", self.omega5),
            ("omega6", self.omega6),
        ]

    @property
    def word(self) -> GroupWord:
        out = GroupWord()
        for _, w in self.segments:
            out = out + w
        return out


class DivergenceService:
    """Service building certified paths and measuring divergence.

    Attributes:
        table: Complete generating set.
        metric: Breadth-first search over ``table``.
        params: Path constants.
        max_radius: Search radius for exact lengths.
    """

    def __init__(
        self,
        table: GeneratorTable,
        params: DivergenceParams | None = None,
        metric: MetricService | None = None,
        max_radius: int | None = None,
    ):
        """Initialize the divergence service.

        Args:
            table: Generating set; it must be complete.
            params: Path constants, defaults from settings.
            metric: Metric service to share, created on demand otherwise.
            max_radius: Search radius, ``settings.BFS_MAX_RADIUS`` by default.

        Raises:
            IncompleteGeneratorTable: If the table lacks required symbols.
        """
        table.require_complete()
        self.table = table
        self.params = params or DivergenceParams(M=settings.DIVERGENCE_M, Q=settings.DIVERGENCE_Q)
        self.metric = metric or MetricService(table)
        self.max_radius = settings.BFS_MAX_RADIUS if max_radius is None else max_radius

    def certified_length(self, g: Element, word: GroupWord | None) -> tuple[LengthCertificate, int, GroupWord]:
        """Return the length certificate, the value used as ``|g|`` and a word for ``g``.

        Raises:
            NotWithinRadius: If ``g`` is outside the ball and no word is supplied.
        """
        cert = self.metric.exact_length(g, self.max_radius, witness=word)
        if cert.exact:
            return cert, cert.lower, self.metric.geodesic_word(g, self.max_radius)
        if word is None:
            raise NotWithinRadius(f"element is farther than {self.max_radius}; supply a word for it")
        return cert, len(word), word

    def _construct(self, g: Element, g_word: GroupWord, n_hat: int, cap: int | None) -> _Construction:
        table = self.table
        s1 = subpath1(g, table)
        n_hat1 = n_hat + len(s1.word)
        s2 = subpath2(s1.element, n_hat1, self.params, table, s1.orientation, cap)
        sizes = self._track(s1, s2)
        g1_word = g_word + s1.word
        omega3 = subpath3_5(inverse(s1.element), g1_word.inverse(), self.metric, self.max_radius)
        g3 = reduce_pair(compose(s2.element, table.word_to_element(omega3)))
        e4 = self.params.Q * n_hat if cap is None else min(self.params.Q * n_hat, cap)
        omega4, case = subpath4(g3, e4, table)
        fallback5 = g1_word + s2.word.inverse() + g1_word.inverse()
        omega5 = subpath3_5(inverse(g3), fallback5, self.metric, self.max_radius)
        omega6 = subpath6(case, e4)
        return _Construction(n_hat, s1, s2, omega3, omega4, omega5, omega6, case, sizes)

    def _track(self, s1: Subpath1Result, s2: Subpath2Result) -> list[int]:
        """Follow the origin rectangle through the part of the second segment before ``x_1``."""
        tracker = OriginTracker.start(s1.element, s1.origin)
        middle = "x_1" if s1.orientation == "vertical" else "y_1"
        for i, letter in enumerate(s2.word):
            if letter.symbol == middle:
                break
            element = self.table.resolve(letter.symbol)
            if letter.exponent < 0:
                element = inverse(element)
            try:
                tracker = lemma31_step(tracker, letter, element)
            except PreconditionViolated as exc:
                logger.warning("origin tracking stopped", extra={"letter_index": i, "reason": str(exc)})
                break
        return tracker.sizes

    def _evidence(self, g: Element, word: GroupWord, ball: BallTable | None) -> list[PrefixEvidence]:
        cache: dict[Letter, Element] = {}
        current = reduce_pair(g)
        out = []
        for i in range(len(word) + 1):
            if i:
                letter = word.letters[i - 1]
                step = cache.get(letter)
                if step is None:
                    step = self.table.resolve(letter.symbol)
                    if letter.exponent < 0:
                        step = inverse(step)
                    cache[letter] = step
                current = reduce_pair(compose(current, step))
            out.append(
                PrefixEvidence(
                    index=i,
                    identity=is_identity(current),
                    lower_bound=length_lower_bound(current),
                    exact_distance=ball.distance(current) if ball is not None else None,
                )
            )
        return out

    def build_path(self, g: Element, word: GroupWord | None = None, exponent_cap: int | None = None) -> PathCertificate:
        """Build the six-segment path from ``g`` to the target and certify it.

        Args:
            g: Start element.
            word: A word for ``g``; required when ``g`` is outside the search ball.
            exponent_cap: Build the whole path with exponents capped at this value.

        Returns:
            The path certificate.

        Raises:
            PreconditionViolated: If ``|g| < 4`` and small parameters are not allowed.
        """
        cert, n_hat, g_word = self.certified_length(g, word)
        if n_hat < 4 and not self.params.allow_small:
            raise PreconditionViolated(f"certified length {n_hat} is below 4")
        built = self._construct(g, g_word, n_hat, exponent_cap)
        omega = built.word

        endpoint_cap = exponent_cap
        check = built
        if exponent_cap is None:
            endpoint_cap = settings.ENDPOINT_EXPONENT_CAP
            check = self._construct(g, g_word, n_hat, endpoint_cap)
        e_target = min(self.params.Q * n_hat, endpoint_cap)  # type: ignore[type-var]
        endpoint = reduce_pair(compose(g, self.table.word_to_element(check.word)))
        endpoint_ok = equals(endpoint, self.table.word_to_element(target_word(e_target)))

        M, Q = self.params.M, self.params.Q
        budgets = {
            "omega1": 3,
            "omega2": 4 * M * n_hat - 1,
            "omega3": 2 * n_hat,
            "omega4": 3 * Q * n_hat,
            "omega5": 5 * M * n_hat,
            "omega6": 6 * Q * n_hat,
        }
        records = []
        offset = 0
        for name, segment in built.segments:
            records.append(SubpathRecord(name=name, start=offset, length=len(segment), budget=budgets[name]))
            offset += len(segment)

        evidence: list[PrefixEvidence] = []
        evidence_cap = None
        if len(omega) <= settings.EVIDENCE_WORD_LIMIT:
            evidence = self._evidence(g, omega, self.metric.ball(self.max_radius))
        elif len(check.word) <= settings.EVIDENCE_WORD_LIMIT:
            # same path shape as the endpoint check, exponents capped
            evidence = self._evidence(g, check.word, self.metric.ball(self.max_radius))
            evidence_cap = endpoint_cap

        certificate = PathCertificate(
            element=str(g),
            n_hat=n_hat,
            length=cert,
            length_mode="exact" if cert.exact else "certified-upper",
            params=self.params,
            orientation=built.s1.orientation,
            subpath1_case=built.s1.case,
            subpath4_case=built.case,
            c_prefix=built.s2.c_prefix,
            subpaths=records,
            word=str(omega),
            word_length=len(omega),
            length_budget=self.params.D * n_hat,
            endpoint_ok=endpoint_ok,
            endpoint_exponent_cap=endpoint_cap,
            origin_sizes=built.tracker_sizes,
            evidence=evidence,
            evidence_complete=bool(evidence),
            evidence_exponent_cap=evidence_cap,
        )
        logger.info(
            "path built",
            extra={
                "n_hat": n_hat,
                "word_length": len(omega),
                "endpoint_ok": endpoint_ok,
                "budgets_ok": certificate.budgets_ok,
            },
        )
        return certificate

    def empirical_divergence(self, x: int, delta: Fraction | str, working_radius: int | None = None) -> DivergenceResult:
        """Measure the divergence function at ``x`` inside a finite ball.

        For every pair at distance ``x`` from the identity, find the shortest
        path between them that avoids the open ball of radius ``delta * x``,
        using only vertices within ``working_radius``.

        Returns:
            The largest such length (None if some pair is disconnected) and
            the pair realizing it.

        Raises:
            ResourceBudgetExceeded: If the working ball exceeds the node cap.
        """
        return empirical_divergence(x, Fraction(delta), self.metric, working_radius)


def empirical_divergence(
    x: int, delta: Fraction, metric: MetricService, working_radius: int | None = None
) -> DivergenceResult:
    """Measure the divergence function at ``x`` on the ball held by ``metric``.

    Raises:
        ResourceBudgetExceeded: If the working ball exceeds the node cap.
    """
    radius = working_radius if working_radius is not None else x + 1
    ball = metric.ball(radius)
    keys = list(ball.entries)
    position = {k: i for i, k in enumerate(keys)}
    threshold = delta * x
    allowed = [Fraction(ball.entries[k].distance) >= threshold for k in keys]

    letters = [step for _, step in metric.letters]
    adjacency: list[list[int]] = []
    for k in keys:
        element = ball.entries[k].element
        neighbours = set()
        for step in letters:
            nk = canonical_key(reduce_pair(compose(element, step)))
            if nk in position:
                neighbours.add(position[nk])
        adjacency.append(sorted(neighbours))

    sphere = sorted(position[k] for k, _ in ball.sphere(x))
    best: int | None = 0
    witness: tuple[int, int] | None = None
    for source in sphere:
        dist = _bfs(source, adjacency, allowed)
        for target in sphere:
            if target <= source:
                continue
            d = dist.get(target)
            if d is None:
                best, witness = None, (source, target)
                break
            if best is not None and (witness is None or d > best):
                best, witness = d, (source, target)
        if best is None:
            break

    symbols = sorted(metric.table.symbols)
    pair = None
    if witness is not None:
        pair = (str(ball.entries[keys[witness[0]]].word), str(ball.entries[keys[witness[1]]].word))
    logger.info("divergence measured", extra={"x": x, "phi": best, "radius": radius, "nodes": len(keys)})
    return DivergenceResult(
        x=x,
        delta=str(delta),
        phi=best if sphere else 0,
        witness=pair,
        symbols=symbols,
        working_radius=radius,
    )


def _bfs(source: int, adjacency: list[list[int]], allowed: list[bool]) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for nxt in adjacency[node]:
            if nxt not in dist and allowed[nxt]:
                dist[nxt] = dist[node] + 1
                queue.append(nxt)
    return dist

