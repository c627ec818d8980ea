"""Simulation of self-organizing structures for qubit networks: periodic
modes of open resonators with periodic mirrors and mean-field photon
condensation in two-level and ferroelectric media."""

__version__ = "0.1.0"
