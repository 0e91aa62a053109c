"""Screening qutrit stabilizer codes as strange-state distillation routines."""

__version__ = "0.1.0"
