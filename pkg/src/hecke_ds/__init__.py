"""Discrete series of graded Hecke algebras of type B/C with unequal parameters,
through the combinatorics of marked partitions."""
from .ds import PeelResult, ds, ds_contains_sgn, one_hook_oracle, peel
from .partitions import Bipartition, Box, ETableau, Hook, Partition, central_character, hook_decomposition
from .poset import OrbitPoset, build_poset, closure_leq, spadesuit_moves, to_dot
from .rational import format_rational, parse_rational
from .segments import (
    CentralCharacter,
    MarkedPartition,
    Segment,
    enumerate_mp,
    orbit_dim,
    same_orbit,
    stabilizer_dims,
    tilde_delta,
)
from .springer import SpinOrbit, ls_rho, sigma_to_orbit, slooten_bipartition
from .tempered import TemperedParameter, casselman_classify, enumerate_tempered, tempered_parameter

__version__ = "0.1.0"
