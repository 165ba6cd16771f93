"""Shared helpers: errors, interrupts, atomic IO, fitting, parallel map."""
