"""Verb handlers, one module per verb group."""
