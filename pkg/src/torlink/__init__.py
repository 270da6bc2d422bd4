"""Tor algebras of codepth 3 quotients and their linkage."""
