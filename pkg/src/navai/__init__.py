"""LLM-driven navigation over a deterministic first-person scene simulator."""

__version__ = "0.1.0"
