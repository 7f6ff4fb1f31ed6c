"""WavCraft: agentic audio editing over a small, closed audio-editing language."""

__version__ = "0.1.0"
