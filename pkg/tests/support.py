"""Shared generators and hypothesis strategies for the test suite."""

import math

import numpy as np
from hypothesis import strategies as st

from ldpkit.dist import Distribution
from ldpkit.kernel import Kernel, bsc, k_rr, randomized_response


def random_distribution(rng, size: int) -> Distribution:
    return Distribution(rng.dirichlet(np.ones(size)))


def random_kernel(rng, nx: int, nz: int) -> Kernel:
    return Kernel(rng.dirichlet(np.ones(nz), size=nx))


def audit_kernel_family(seed: int = 7):
    """Named kernels with output size <= 10 for raw-definition checks."""
    rng = np.random.default_rng(seed)
    return [
        ("rr(0.5)", randomized_response(0.5)),
        ("rr(1)", randomized_response(1.0)),
        ("rr(2)", randomized_response(2.0)),
        ("krr(ln3,3)", k_rr(math.log(3.0), 3)),
        ("krr(1,5)", k_rr(1.0, 5)),
        ("bsc(0.25)", bsc(0.25)),
        ("bsc(0.5)", bsc(0.5)),
        ("identity(3)", Kernel.identity(3)),
        ("random(3,7)", random_kernel(rng, 3, 7)),
        ("random(4,10)", random_kernel(rng, 4, 10)),
        ("random(2,6)", random_kernel(rng, 2, 6)),
    ]


@st.composite
def distributions(draw, size: int | None = None, min_size: int = 2, max_size: int = 5):
    k = size if size is not None else draw(st.integers(min_size, max_size))
    weights = draw(
        st.lists(st.integers(0, 1000), min_size=k, max_size=k).filter(lambda w: sum(w) > 0)
    )
    arr = np.asarray(weights, dtype=float)
    return Distribution(arr / arr.sum())


@st.composite
def distribution_pairs(draw, min_size: int = 2, max_size: int = 5):
    k = draw(st.integers(min_size, max_size))
    return draw(distributions(size=k)), draw(distributions(size=k))


@st.composite
def kernels(draw, min_in: int = 2, max_in: int = 4, min_out: int = 2, max_out: int = 4):
    nx = draw(st.integers(min_in, max_in))
    nz = draw(st.integers(min_out, max_out))
    rows = [draw(distributions(size=nz)).probs for _ in range(nx)]
    return Kernel(np.vstack(rows))
