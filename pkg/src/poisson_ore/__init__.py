"""Exact computations with Poisson-Ore extensions and their enveloping algebras."""
