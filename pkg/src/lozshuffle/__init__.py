"""Exact lozenge-tiling counts and shuffling-theorem checks for doubly-dented hexagons."""
