"""Shared fixtures: the gallery of small algebras the suites run over."""

from __future__ import annotations

import random

import pytest

import superquad as sq


@pytest.fixture(scope="session")
def gallery():
    """Small algebras used by the randomized property suites."""
    return {
        "abelian(3|0)": sq.abelian(3, 0),
        "abelian(1|2)": sq.abelian(1, 2),
        "heisenberg3": sq.heisenberg3(),
        "solvable2d": sq.solvable2d(),
        "gl(1,1)": sq.build_glnn(1),
        "g(2)": sq.build_gn(2),
    }


@pytest.fixture(scope="session")
def nilpotent_gallery(gallery):
    return {name: g for name, g in gallery.items()
            if sq.is_nilpotent(g)}


@pytest.fixture(scope="session")
def supercyclic_bases(gallery):
    """Precomputed supercyclic cocycle bases, keyed like the gallery."""
    return {name: sq.z2_supercyclic_basis(g) for name, g in gallery.items()}


@pytest.fixture(scope="session")
def z2_bases(gallery):
    return {name: sq.z2_basis(g) for name, g in gallery.items()}


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)
