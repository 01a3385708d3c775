"""Benchmark harness: testbed generation, batch solving and reports."""
from .cli import cmd_gen, cmd_report, cmd_solve, main

__all__ = ["cmd_gen", "cmd_solve", "cmd_report", "main"]
