"""Core types for exact arithmetic near the tower.

This package defines the binary fields, index sequences and truncated Laurent
series used by :mod:`astower.tower`.
"""
