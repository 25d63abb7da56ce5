import numpy as np
import pytest

from matagent import kernels
from matagent.structure import CrystalStructure, Lattice, Site

FCC_FRACS = [(0, 0, 0), (0, 0.5, 0.5), (0.5, 0, 0.5), (0.5, 0.5, 0)]


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger numba compilation once so per-test timing stays honest
    kernels.warmup()


def cubic_cell(element: str, a: float, fracs) -> CrystalStructure:
    return CrystalStructure(Lattice(np.eye(3) * a), [Site(element, f) for f in fracs])


def sc_cell(element: str = "Po", a: float = 3.34) -> CrystalStructure:
    return cubic_cell(element, a, [(0, 0, 0)])


def fcc_cell(element: str, a: float) -> CrystalStructure:
    return cubic_cell(element, a, FCC_FRACS)


def diamond_cell(element: str = "Si", a: float = 5.43) -> CrystalStructure:
    fracs = [np.add(f, b) for f in FCC_FRACS for b in [(0, 0, 0), (0.25, 0.25, 0.25)]]
    return cubic_cell(element, a, fracs)


def rocksalt_cell(el_a: str, el_b: str, a: float) -> CrystalStructure:
    sites = [Site(el_a, f) for f in FCC_FRACS]
    sites += [Site(el_b, np.add(f, (0.5, 0, 0))) for f in FCC_FRACS]
    return CrystalStructure(Lattice(np.eye(3) * a), sites)


def pair_cell(el_a: str, el_b: str, separation: float, box: float = 20.0) -> CrystalStructure:
    half = separation / (2.0 * box)
    return CrystalStructure(
        Lattice(np.eye(3) * box),
        [Site(el_a, (0.5 - half, 0.5, 0.5)), Site(el_b, (0.5 + half, 0.5, 0.5))],
    )


def random_structure(rng: np.random.Generator, max_elements: int = 3) -> CrystalStructure:
    """Random valid cell: cubic-ish lattice, well-separated sites."""
    a = rng.uniform(6.0, 12.0)
    lattice = Lattice(np.eye(3) * a + rng.uniform(-0.3, 0.3, size=(3, 3)))
    pool = ["Si", "Ga", "N", "Al", "O", "Mg", "Ti", "Cu"]
    rng.shuffle(pool)
    elements = pool[: rng.integers(1, max_elements + 1)]
    # place sites on a jittered grid so the 0.25 A separation check passes
    n_per_axis = 3
    coords = []
    for i in range(n_per_axis):
        for j in range(n_per_axis):
            for k in range(n_per_axis):
                coords.append((np.array([i, j, k]) + rng.uniform(0.1, 0.35, 3)) / n_per_axis)
    rng.shuffle(coords)
    n_sites = int(rng.integers(1, 9))
    sites = [Site(elements[i % len(elements)], coords[i]) for i in range(n_sites)]
    # group by element so serialize/parse keeps site order
    sites.sort(key=lambda s: elements.index(s.element))
    return CrystalStructure(lattice, sites, comment="random test cell")


def logical_clock(start: float = 0.0):
    state = {"t": start}

    def tick() -> float:
        state["t"] += 1.0
        return state["t"]

    return tick
