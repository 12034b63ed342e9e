"""Dyadic rectangles, elements, grid diagrams and tree pairs."""
