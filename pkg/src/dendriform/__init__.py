"""Successor identities, dendriform structures and Rota–Baxter doubling."""

__version__ = "0.1.0"
