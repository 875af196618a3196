"""Algebraic data models."""
