"""Shared hypothesis strategies for sets, functions, relations and spans."""

from __future__ import annotations

import hypothesis.strategies as st
from hypothesis import settings

from diexact.fsets import FiniteSet, SetFunction, Span, span
from diexact.relations import Relation, difunctional_closure, tabulate

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


def sized_sets(prefix: str, min_size: int = 0, max_size: int = 3) -> st.SearchStrategy[FiniteSet]:
    return st.integers(min_size, max_size).map(
        lambda n: FiniteSet(tuple(f"{prefix}{i}" for i in range(1, n + 1)))
    )


@st.composite
def relations(
    draw, source_prefix: str = "a", target_prefix: str = "b", max_size: int = 3
) -> Relation:
    source = draw(sized_sets(source_prefix, max_size=max_size))
    target = draw(sized_sets(target_prefix, max_size=max_size))
    matrix = tuple(
        tuple(draw(st.booleans()) for _ in target) for _ in source
    )
    return Relation(source, target, matrix)


@st.composite
def endo_relations(draw, prefix: str = "a", max_size: int = 3) -> Relation:
    carrier = draw(sized_sets(prefix, max_size=max_size))
    matrix = tuple(tuple(draw(st.booleans()) for _ in carrier) for _ in carrier)
    return Relation(carrier, carrier, matrix)


@st.composite
def difunctional_relations_st(draw, max_size: int = 3) -> Relation:
    return difunctional_closure(draw(relations(max_size=max_size)))


@st.composite
def functions(
    draw,
    domain: FiniteSet | None = None,
    codomain: FiniteSet | None = None,
    domain_prefix: str = "x",
    codomain_prefix: str = "y",
    max_size: int = 3,
) -> SetFunction:
    if domain is None:
        domain = draw(sized_sets(domain_prefix, max_size=max_size))
    if codomain is None:
        min_codomain = 1 if len(domain) else 0
        codomain = draw(sized_sets(codomain_prefix, min_size=min_codomain, max_size=max_size))
    values = tuple(draw(st.sampled_from(codomain.elements)) for _ in domain)
    return SetFunction(domain, codomain, values)


@st.composite
def malcev_spans(draw, max_size: int = 3) -> Span:
    return tabulate(draw(difunctional_relations_st(max_size=max_size)))


@st.composite
def arbitrary_spans(draw, max_size: int = 3) -> Span:
    apex = draw(sized_sets("c", max_size=max_size))
    left = draw(functions(domain=apex, codomain_prefix="a", max_size=max_size))
    right = draw(functions(domain=apex, codomain_prefix="b", max_size=max_size))
    return span(left, right)
