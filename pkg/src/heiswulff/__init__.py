"""Wulff-type spheres in the first Heisenberg group."""
