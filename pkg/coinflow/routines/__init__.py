"""Reversible and one-way subroutines on 'L' shapes."""

# First party
from coinflow.routines.flip import flip_L
from coinflow.routines.grow import canonicalize, grow_L
from coinflow.routines.leapfrog import leapfrog
from coinflow.routines.sweep import SweepLevel, sweep_build, sweep_capacity
from coinflow.routines.trim import shrink_L, trim_L

__all__ = [
    "SweepLevel",
    "canonicalize",
    "flip_L",
    "grow_L",
    "leapfrog",
    "shrink_L",
    "sweep_build",
    "sweep_capacity",
    "trim_L",
]
