"""Named property checks behind the acceptance suite and the full report.

Every check compares a construction against an independent expectation: a
frozen expected graph, a second computation route, or an exactly decidable
reformulation (synchronized products for injectivity, relation fixpoints
for tail behavior).  Checks are grouped into numbered criteria; the test
suite prints one line per criterion and the CLI renders the same data.

All sweeps are bounded and deterministic: periodic words up to a period
bound, random graphs and walks from fixed seeds, tail words up to a length
bound.  The bounds are part of each criterion's reported detail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

from .errors import (
    BudgetExceededError,
    EmptyShiftError,
    GraphFormatError,
    LabelPathDiedError,
    NotRightResolvingError,
    UnrealizableWordError,
    VerificationError,
    exit_code_for,
)
from .graphs import (
    LabeledGraph,
    PeriodicWord,
    Window,
    edge_lookup,
    essentialize,
    graph_from_parts,
    path_window,
)
from .relations import (
    DEFAULT_MONOID_BUDGET,
    mask_of,
    omega_power,
    stabilized_domain,
    stabilized_range,
    transition_monoid,
    word_relation,
)
from .analysis import (
    components_and_sources,
    follower_partition,
    graphs_isomorphic,
    periodic_points,
)
from .covers import (
    FutureCover,
    check_regular,
    extended_future_cover,
    future_cover,
    merged_graph,
    past_set_ray,
    stable_core,
    stable_sets_from_tails,
    subset_construction,
)
from .fibers import (
    bundle_graph,
    fiber_core,
    fiber_count_periodic,
    fiber_ray,
    fiber_sets_on_periodic,
)
from .codes import (
    CheckOutcome,
    SlidingBlockCode,
    SquareReport,
    fill_gap,
    higher_block,
    identity_square,
    inverse_square,
    lift_conjugacy,
    renaming_square,
    sample_core_windows,
    verify_lift_diagrams,
    verify_square,
)
from .fixtures import BASE_FIXTURES, EXPECTED_GRAPHS, load_fixture


@dataclass(frozen=True)
class VerifyBounds:
    """Enumeration bounds for the bounded checks; defaults are desk scale."""

    max_period: int = 6
    word_length: int = 12
    tail_bound: int = 8
    random_graphs: int = 25
    random_seed: int = 20260814
    monoid_budget: int = DEFAULT_MONOID_BUDGET


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of one numbered acceptance criterion."""

    number: int
    title: str
    checks: tuple[CheckOutcome, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CheckOutcome]:
        return [c for c in self.checks if not c.ok]


def _named(name: str, ok: bool, detail: str = "") -> CheckOutcome:
    return CheckOutcome(name, ok, detail)


def _counts(g: LabeledGraph) -> str:
    return f"{len(g.vertices)} vertices / {len(g.edges)} edges"


def _iso_expected(
    name: str,
    got: LabeledGraph,
    fixture: str,
    role: str,
    want: tuple[int, int],
) -> CheckOutcome:
    expected = load_fixture(EXPECTED_GRAPHS[fixture][role])
    res = graphs_isomorphic(got, expected)
    counts_ok = (len(got.vertices), len(got.edges)) == want
    return _named(
        name,
        res.isomorphic and counts_ok,
        _counts(got) + ("" if res.isomorphic else "; differs from the expected graph"),
    )


# ---------------------------------------------------------------------------
# criterion 1: the first worked example, end to end


def _criterion_example_a(bounds: VerifyBounds) -> list[CheckOutcome]:
    g = load_fixture("example_a")
    checks = []
    sub = subset_construction(g, "full")
    checks.append(
        _iso_expected("subset-cover", sub.graph, "example_a", "subset_full", (7, 24))
    )
    core = stable_core(g, bounds.monoid_budget)
    checks.append(
        _iso_expected("stable-core", core.graph, "example_a", "stable_core", (6, 21))
    )
    ab = frozenset({g.vertex_index("a"), g.vertex_index("b")})
    checks.append(
        _named(
            "stable-core-omits-ab",
            ab not in set(core.members),
            "the two-vertex set {a,b} is not a stabilized endpoint set",
        )
    )
    parts = follower_partition(core.graph)
    checks.append(
        _named(
            "follower-partition-discrete",
            all(len(cls) == 1 for cls in parts),
            f"{len(parts)} follower classes for {len(core.graph.vertices)} vertices",
        )
    )
    fc = future_cover(g, bounds.monoid_budget)
    checks.append(
        _named(
            "future-cover-equals-core",
            graphs_isomorphic(fc.cover, core.graph).isomorphic,
            "merging the stable core changes nothing here",
        )
    )
    fcore = fiber_core(g, bounds.max_period, bounds.tail_bound, bounds.monoid_budget)
    checks.append(
        _iso_expected("fiber-core", fcore.graph, "example_a", "fiber_core", (7, 18))
    )
    return checks


# ---------------------------------------------------------------------------
# criterion 2: the second worked example, end to end


def _criterion_example_b(bounds: VerifyBounds) -> list[CheckOutcome]:
    g = load_fixture("example_b")
    checks = []
    fc = future_cover(g, bounds.monoid_budget)
    checks.append(
        _named(
            "future-cover-reproduces-base",
            graphs_isomorphic(fc.cover, g).isomorphic,
            _counts(fc.cover),
        )
    )
    checks.append(
        _iso_expected(
            "stable-core", fc.core.graph, "example_b", "stable_core", (3, 8)
        )
    )
    classes = {
        frozenset(fc.core.graph.vertices[v] for v in cls)
        for cls in fc.bundle.classes
    }
    want = {frozenset({"{a}", "{a,b}"}), frozenset({"{b}"})}
    checks.append(
        _named(
            "follower-classes",
            classes == want,
            "classes {{a},{a,b}} and {{b}}",
        )
    )
    ext = extended_future_cover(g, bounds.monoid_budget)
    checks.append(
        _iso_expected(
            "extended-cover", ext.graph, "example_b", "extended_core", (3, 8)
        )
    )
    checks.append(
        _named(
            "extended-merge-reproduces-base",
            graphs_isomorphic(ext.merge.cover, g).isomorphic,
            "merging the extended cover recovers the original presentation",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# criterion 3: two independent routes to the stable family


def random_right_resolving_graphs(
    count: int,
    seed: int,
    max_vertices: int = 6,
    max_symbols: int = 4,
    budget: int = 4000,
) -> list[LabeledGraph]:
    """Deterministic essential right-resolving test graphs.

    Each vertex gets a random nonempty set of out-labels with one target
    per label, so the graph is right-resolving by construction; drafts
    that trim to nothing or whose transition monoid exceeds the budget are
    skipped (the retry sequence is part of the seeded stream).
    """
    rng = random.Random(seed)
    out: list[LabeledGraph] = []
    while len(out) < count:
        n = rng.randint(1, max_vertices)
        s = rng.randint(1, max_symbols)
        triples = []
        for v in range(n):
            for a in sorted(rng.sample(range(s), rng.randint(1, s))):
                triples.append((f"v{v}", str(a), f"v{rng.randrange(n)}"))
        g = graph_from_parts(
            [str(a) for a in range(s)], [f"v{v}" for v in range(n)], triples
        )
        try:
            g = essentialize(g)
            transition_monoid(g, budget)
        except (EmptyShiftError, BudgetExceededError):
            continue
        out.append(g)
    return out


def _criterion_oracle(bounds: VerifyBounds) -> list[CheckOutcome]:
    named = [
        (name, load_fixture(name)) for name in ("example_a", "example_b", "even_shift")
    ]
    randoms = [
        (f"random-{i}", g)
        for i, g in enumerate(
            random_right_resolving_graphs(bounds.random_graphs, bounds.random_seed)
        )
    ]
    bad: list[str] = []
    for name, g in named + randoms:
        core = stable_core(g, bounds.monoid_budget)
        oracle = stable_sets_from_tails(g, 2 * len(core.monoid.elements))
        if set(oracle) != set(core.members):
            bad.append(name)
    detail = (
        f"{len(named)} bundled graphs and {len(randoms)} seeded random graphs"
        if not bad
        else "family mismatch on: " + ", ".join(bad)
    )
    return [_named("stable-family-matches-tail-oracle", not bad, detail)]


# ---------------------------------------------------------------------------
# criterion 4: regularity of the constructed covers


def _criterion_regularity(bounds: VerifyBounds) -> list[CheckOutcome]:
    checks = []
    bad_cores: list[str] = []
    bad_covers: list[str] = []
    for name in BASE_FIXTURES:
        g = load_fixture(name)
        core = stable_core(g, bounds.monoid_budget)
        if not check_regular(core.graph, bounds.monoid_budget).ok:
            bad_cores.append(name)
        cover = merged_graph(core.graph).cover
        if not check_regular(cover, bounds.monoid_budget).ok:
            bad_covers.append(name)
    checks.append(
        _named(
            "stable-cores-regular",
            not bad_cores,
            f"{len(BASE_FIXTURES)} fixtures" if not bad_cores else ", ".join(bad_cores),
        )
    )
    checks.append(
        _named(
            "future-covers-regular",
            not bad_covers,
            f"{len(BASE_FIXTURES)} fixtures" if not bad_covers else ", ".join(bad_covers),
        )
    )
    g = load_fixture("two_loops_vs_one")
    rep = check_regular(g, bounds.monoid_budget)
    q = g.vertex_index("q")
    checks.append(
        _named(
            "irregular-counterexample",
            (not rep.ok) and rep.failing_vertices() == [q],
            "only the vertex whose follower set no left ray realizes fails",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# criterion 5: periodic-point identities


def _alpha_edges_in_cover(
    fc: FutureCover, p: PeriodicWord
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two routes to the canonical presentation of p in the merged cover.

    Route one factors the stable-core ray through the merge.  Route two
    computes the ray inside the cover's own stable core and transports it
    back along the (unique, since the cover is follower-separated)
    label-preserving isomorphism between the re-merged core and the cover.
    """
    factored = tuple(fc.bundle.factor_edge[e] for e in past_set_ray(fc.core, p).edges)
    cover = fc.cover
    core2 = stable_core(cover)
    merge2 = merged_graph(core2.graph)
    iso = graphs_isomorphic(merge2.cover, cover)
    if not iso.isomorphic:
        raise VerificationError("merging the cover's stable core lost the cover")
    ray2 = past_set_ray(core2, p)
    lookup = edge_lookup(cover)
    direct = []
    for k in range(p.period):
        v = iso.mapping[merge2.factor_vertex[ray2.vertices[k]]]
        e = lookup.get((v, p.at(k)))
        if e is None:
            raise VerificationError("cover misses an edge of the canonical ray")
        direct.append(e)
    return factored, tuple(direct)


def _criterion_periodic(bounds: VerifyBounds) -> list[CheckOutcome]:
    checks = []
    beta_bad: list[str] = []
    natural_bad: list[str] = []
    comp_bad: list[str] = []
    count_bad: list[str] = []
    words = 0
    source_words = 0
    for name in BASE_FIXTURES:
        g = load_fixture(name)
        core = stable_core(g, bounds.monoid_budget)
        fc = FutureCover(core, merged_graph(core.graph))
        info = components_and_sources(core.graph, core.members)
        fcore = fiber_core(g, bounds.max_period, bounds.tail_bound, bounds.monoid_budget)
        fiber_index = fcore.member_index()
        by_source_symbol = {
            (be.source, be.symbol): be for be in fcore.bundle_edges
        }
        for k, (u, a, v) in enumerate(core.graph.edges):
            cu = info.component_of[u]
            if cu is None or cu != info.component_of[v]:
                continue
            su = fiber_index.get(core.members[u])
            be = None if su is None else by_source_symbol.get((su, a))
            if be is None or fcore.members[be.target] != core.members[v]:
                comp_bad.append(f"{name}:{core.graph.edge_name(k)}")
        for p in periodic_points(g, bounds.max_period):
            words += 1
            data = fiber_sets_on_periodic(g, p)
            if data.fiber_sets != data.past_sets:
                beta_bad.append(f"{name}:{p.word}")
            fiber_ray(g, p)  # asserts the all-emit bundle closes up
            factored, direct = _alpha_edges_in_cover(fc, p)
            if factored != direct:
                natural_bad.append(f"{name}:{p.word}")
            ray = past_set_ray(core, p)
            comps = {info.component_of[v] for v in ray.vertices}
            c = comps.pop()
            if comps or c is None:
                count_bad.append(f"{name}:{p.word} ray leaves its component")
            elif info.is_source[c]:
                source_words += 1
                if data.count != info.multiplicity[c]:
                    count_bad.append(f"{name}:{p.word}")
    checks.append(
        _named(
            "fiber-sets-equal-past-sets",
            not beta_bad,
            f"{words} periodic words up to period {bounds.max_period}"
            if not beta_bad
            else ", ".join(beta_bad[:3]),
        )
    )
    checks.append(
        _named(
            "merge-respects-canonical-rays",
            not natural_bad,
            f"two routes per word, {words} words"
            if not natural_bad
            else ", ".join(natural_bad[:3]),
        )
    )
    checks.append(
        _named(
            "component-edges-in-fiber-core",
            not comp_bad,
            "every in-component stable-core edge appears as a bundle edge"
            if not comp_bad
            else ", ".join(comp_bad[:3]),
        )
    )
    checks.append(
        _named(
            "source-component-fiber-counts",
            not count_bad,
            f"{source_words} words with rays in source components"
            if not count_bad
            else ", ".join(count_bad[:3]),
        )
    )
    a = load_fixture("example_a")
    b = load_fixture("example_b")
    named_counts = [
        ("example_a", a, PeriodicWord((a.symbol_index("0"),)), 3),
        ("example_a", a, PeriodicWord((a.symbol_index("2"),)), 1),
        ("example_b", b, PeriodicWord((b.symbol_index("2"),)), 2),
    ]
    bad = [
        f"{name}:{p.word}"
        for name, g, p, want in named_counts
        if fiber_count_periodic(g, p) != want
    ]
    checks.append(
        _named(
            "named-fiber-counts",
            not bad,
            "constant words hit counts 3, 1 and 2" if not bad else ", ".join(bad),
        )
    )
    return checks


# ---------------------------------------------------------------------------
# criterion 6: merging a merged cover changes nothing


def _criterion_idempotence(bounds: VerifyBounds) -> list[CheckOutcome]:
    bad: list[str] = []
    for name in BASE_FIXTURES:
        g = load_fixture(name)
        fc = future_cover(g, bounds.monoid_budget)
        again = future_cover(fc.cover, bounds.monoid_budget)
        if not graphs_isomorphic(again.cover, fc.cover).isomorphic:
            bad.append(name)
    return [
        _named(
            "future-cover-idempotent",
            not bad,
            f"{len(BASE_FIXTURES)} fixtures" if not bad else ", ".join(bad),
        )
    ]


# ---------------------------------------------------------------------------
# criterion 7: the lifting suite


def _prefixed(prefix: str, report: SquareReport) -> list[CheckOutcome]:
    return [
        CheckOutcome(f"{prefix}-{c.name}", c.ok, c.detail) for c in report.checks
    ]


def _criterion_lifting(bounds: VerifyBounds) -> list[CheckOutcome]:
    checks: list[CheckOutcome] = []
    rng = random.Random(bounds.random_seed)

    a = load_fixture("example_a")
    lifted = lift_conjugacy(identity_square(a), budget=bounds.monoid_budget)
    report = verify_lift_diagrams(lifted, inverse_lifted=lifted, max_period=3, walks=4)
    checks.append(
        _named(
            "identity-square-diagrams",
            report.ok,
            "all diagram checks pass"
            if report.ok
            else "; ".join(c.name for c in report.failures()),
        )
    )
    D = lifted.block_radius
    wins = sample_core_windows(
        lifted.core_g, 2 * D + 9, periodic_points(a, 3), rng, walks=4
    )
    ident = all(
        lifted.apply_window(w).items == w.segment(w.start + D, w.end - D).items
        for w in wins
    )
    checks.append(
        _named(
            "identity-square-acts-identically",
            ident,
            f"{len(wins)} sampled windows reproduce themselves",
        )
    )

    b = load_fixture("example_b")
    renamed = LabeledGraph(b.symbols, ("x", "y"), b.edges)
    square = renaming_square(b, renamed, (0, 1))
    lifted = lift_conjugacy(square, budget=bounds.monoid_budget)
    inverse = lift_conjugacy(inverse_square(square), budget=bounds.monoid_budget)
    report = verify_lift_diagrams(lifted, inverse_lifted=inverse, max_period=3, walks=4)
    checks.append(
        _named(
            "renaming-square-diagrams",
            report.ok,
            "all diagram checks pass"
            if report.ok
            else "; ".join(c.name for c in report.failures()),
        )
    )
    vert_map = {
        i: lifted.core_h.member_index()[frozenset({0: 0, 1: 1}[v] for v in m)]
        for i, m in enumerate(lifted.core_g.members)
    }
    lookup = edge_lookup(lifted.core_h.graph)
    edge_map = {
        k: lookup[(vert_map[u], s)]
        for k, (u, s, v) in enumerate(lifted.core_g.graph.edges)
    }
    D = lifted.block_radius
    wins = sample_core_windows(
        lifted.core_g, 2 * D + 9, periodic_points(b, 3), rng, walks=4
    )
    induced = all(
        lifted.apply_window(w).items
        == tuple(edge_map[k] for k in w.segment(w.start + D, w.end - D).items)
        for w in wins
    )
    checks.append(
        _named(
            "renaming-square-matches-subset-isomorphism",
            induced,
            f"{len(wins)} sampled windows follow the renamed member sets",
        )
    )

    hb = higher_block(b, 2)
    lifted = lift_conjugacy(hb.square, budget=bounds.monoid_budget)
    inverse = lift_conjugacy(inverse_square(hb.square), budget=bounds.monoid_budget)
    report = verify_lift_diagrams(lifted, inverse_lifted=inverse, max_period=4)
    checks.extend(_prefixed("higher-block", report))
    return checks


# ---------------------------------------------------------------------------
# criterion 8: negative controls


def _corrupted_higher_block_square(g: LabeledGraph, block: tuple[str, ...]):
    hb = higher_block(g, 2)
    label_rule = dict(hb.square.label_code.rule)
    original = label_rule[block]
    label_rule[block] = next(s for s in sorted(hb.graph.symbols) if s != original)
    bad_label_code = SlidingBlockCode(
        hb.square.label_code.input_alphabet,
        hb.square.label_code.output_alphabet,
        hb.square.label_code.radius,
        label_rule,
    )
    return replace(hb.square, label_code=bad_label_code)


def _criterion_negative(bounds: VerifyBounds) -> list[CheckOutcome]:
    checks = []
    b = load_fixture("example_b")
    bad_square = _corrupted_higher_block_square(b, ("2", "2", "2"))
    report = verify_square(bad_square)
    checks.append(
        _named(
            "corrupted-label-rule-fails-square-check",
            not report.ok,
            "first failure: "
            + (report.failures()[0].name if report.failures() else "none"),
        )
    )

    lifted_bad = lift_conjugacy(bad_square, verify=False, budget=bounds.monoid_budget)
    core = lifted_bad.core_g
    lookup = edge_lookup(core.graph)
    idx = core.member_index()
    both = idx[frozenset({0, 1})]
    single = idx[frozenset({0})]
    sym = {s: i for i, s in enumerate(core.graph.symbols)}
    loop_both = lookup[(both, sym["2"])]
    crossing = lookup[(both, sym["1"])]
    loop_single = lookup[(single, sym["1"])]
    window = path_window(
        core.graph, [loop_both] * 8 + [crossing] + [loop_single] * 8
    )
    outcome: Optional[str] = None
    try:
        fill_gap(lifted_bad, window, (0, 7), (9, 16))
    except (LabelPathDiedError, VerificationError) as exc:
        outcome = type(exc).__name__
    checks.append(
        _named(
            "corrupted-label-rule-breaks-gap-filling",
            outcome is not None,
            f"raised {outcome}" if outcome else "gap filling unexpectedly succeeded",
        )
    )
    good = lift_conjugacy(higher_block(b, 2).square, budget=bounds.monoid_budget)
    filled = fill_gap(good, window, (0, 7), (9, 16))
    checks.append(
        _named(
            "intact-square-fills-the-same-gap",
            len(filled) == len(window) - 2 * good.kappa,
            f"{len(filled)} edges filled",
        )
    )

    nr = graph_from_parts(
        ["0"], ["v", "w"], [("v", "0", "v"), ("v", "0", "w"), ("w", "0", "v")]
    )
    outcomes = []
    for op_name, op in (
        ("merged_graph", lambda: merged_graph(nr)),
        ("bundle_graph", lambda: bundle_graph(nr)),
        ("fiber_core", lambda: fiber_core(nr)),
    ):
        try:
            op()
            outcomes.append(f"{op_name}: accepted")
        except NotRightResolvingError as exc:
            code = exit_code_for(exc)
            if code != 2:
                outcomes.append(f"{op_name}: exit code {code}")
    checks.append(
        _named(
            "non-right-resolving-rejected",
            not outcomes,
            "merge and bundle operations raise the exit-2 error"
            if not outcomes
            else "; ".join(outcomes),
        )
    )
    return checks


# ---------------------------------------------------------------------------
# extra bounded properties used by the test suite


def check_tail_asymptotics(
    g: LabeledGraph,
    max_period: int = 4,
    max_connector: int = 2,
    max_configs: int = 40,
) -> CheckOutcome:
    """Forward agreement of fiber sets with past sets on tailed points.

    For configurations that read some word after infinitely many copies of
    a periodic word and then repeat the periodic word forever, the fiber
    source sets must equal the stabilized past sets from some index on.
    The horizon covers every subset the image iteration can visit.
    """
    configs = 0
    bad: list[str] = []
    n = len(g.vertices)
    connectors: list[tuple[int, ...]] = [()]
    for length in range(1, max_connector + 1):
        grow = []
        for w in connectors:
            if len(w) == length - 1:
                grow.extend(w + (a,) for a in range(len(g.symbols)))
        connectors.extend(grow)
    for p in periodic_points(g, max_period):
        tail = omega_power(word_relation(g, p.word))
        for v_word in connectors:
            if configs >= max_configs:
                break
            middle = word_relation(g, v_word) if v_word else None
            rel = tail if middle is None else tail.compose(middle).compose(tail)
            if rel.is_empty():
                continue
            configs += 1
            T = p.period
            past = mask_of(stabilized_range(tail))
            if middle is not None:
                past = middle.image(past)
            horizon = T * (2 ** min(n, 8) + 2)
            step = [word_relation(g, (p.at(k),)) for k in range(T)]
            forwards = [
                mask_of(stabilized_domain(word_relation(g, p.rotation_from(k))))
                for k in range(T)
            ]
            equal_from: Optional[int] = None
            current = past
            for t in range(horizon):
                fiber = current & forwards[t % T]
                if not fiber:
                    bad.append(f"{p.word}+{v_word}: empty fiber set")
                    break
                if fiber == current:
                    if equal_from is None:
                        equal_from = t
                elif equal_from is not None:
                    bad.append(f"{p.word}+{v_word}: equality not final from {equal_from}")
                    break
                current = step[t % T].image(current)
            else:
                if equal_from is None:
                    bad.append(f"{p.word}+{v_word}: no agreement index")
    return _named(
        "tail-configurations-stabilize",
        not bad,
        f"{configs} tailed configurations" if not bad else "; ".join(bad[:3]),
    )


def _synchronized_pairs(
    g: LabeledGraph, left: Sequence[int], right: Sequence[int]
) -> set[tuple[int, int]]:
    """Bi-essential label-synchronized vertex pairs between two vertex sets,
    using only edges internal to each set."""
    left_set, right_set = set(left), set(right)
    arcs = [
        ((u1, u2), (v1, v2))
        for u1, a1, v1 in g.edges
        if u1 in left_set and v1 in left_set
        for u2, a2, v2 in g.edges
        if u2 in right_set and v2 in right_set and a1 == a2
    ]
    nodes = {x for arc in arcs for x in arc}
    while True:
        outs = {x for x, _ in arcs}
        ins = {y for _, y in arcs}
        dead = {x for x in nodes if x not in outs or x not in ins}
        if not dead:
            break
        nodes -= dead
        arcs = [(x, y) for x, y in arcs if x in nodes and y in nodes]
    return nodes


def check_source_component_injectivity(core, detail_name: str = "") -> CheckOutcome:
    """The label map is injective on each source component, and distinct
    source components present disjoint sets of bi-infinite words.

    Decided exactly through synchronized products: a surviving off-diagonal
    pair inside one component is a label collision; a surviving pair across
    two components is a shared word.
    """
    info = components_and_sources(core.graph, core.members)
    sources = [
        comp
        for comp, is_src in zip(info.components, info.is_source)
        if is_src
    ]
    bad: list[str] = []
    for comp in sources:
        pairs = _synchronized_pairs(core.graph, comp, comp)
        if any(u != v for u, v in pairs):
            bad.append("label collision inside a source component")
    for i, comp_a in enumerate(sources):
        for comp_b in sources[i + 1 :]:
            if _synchronized_pairs(core.graph, comp_a, comp_b):
                bad.append("two source components share a word")
    return _named(
        "source-components-label-injective" + detail_name,
        not bad,
        f"{len(sources)} source components" if not bad else "; ".join(sorted(set(bad))),
    )


# ---------------------------------------------------------------------------
# the numbered suite


CRITERIA: tuple[tuple[int, str, Callable[[VerifyBounds], list[CheckOutcome]]], ...] = (
    (1, "example-a-pipeline", _criterion_example_a),
    (2, "example-b-pipeline", _criterion_example_b),
    (3, "stable-family-oracle", _criterion_oracle),
    (4, "regularity", _criterion_regularity),
    (5, "periodic-identities", _criterion_periodic),
    (6, "idempotence", _criterion_idempotence),
    (7, "lifting-suite", _criterion_lifting),
    (8, "negative-controls", _criterion_negative),
)


def run_criterion(number: int, bounds: Optional[VerifyBounds] = None) -> CriterionResult:
    bounds = bounds or VerifyBounds()
    for num, title, fn in CRITERIA:
        if num == number:
            return CriterionResult(num, title, tuple(fn(bounds)))
    raise KeyError(f"no criterion numbered {number}")


def run_acceptance(bounds: Optional[VerifyBounds] = None) -> list[CriterionResult]:
    bounds = bounds or VerifyBounds()
    return [
        CriterionResult(num, title, tuple(fn(bounds))) for num, title, fn in CRITERIA
    ]


def headline_counts(bounds: Optional[VerifyBounds] = None) -> list[str]:
    """The four headline construction sizes of the bundled examples."""
    bounds = bounds or VerifyBounds()
    a = load_fixture("example_a")
    b = load_fixture("example_b")
    sub = subset_construction(a, "full")
    core = stable_core(a, bounds.monoid_budget)
    fcore = fiber_core(a, bounds.max_period, bounds.tail_bound, bounds.monoid_budget)
    ext = extended_future_cover(b, bounds.monoid_budget)
    return [
        f"subset(Example-A): {len(sub.graph.vertices)} vertices / {len(sub.graph.edges)} edges",
        f"past-cover(Example-A): {len(core.graph.vertices)} / {len(core.graph.edges)}",
        f"gprime(Example-A): {len(fcore.graph.vertices)} / {len(fcore.graph.edges)}",
        f"extended(Example-B): {len(ext.graph.vertices)} / {len(ext.graph.edges)}",
    ]
