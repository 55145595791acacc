"""Command-line front end for padic-cauchy."""
from .problem_file import ProblemFile, TermSpec, load_problem, parse_problem
from .report import Report, render, render_text
from .runner import build_arg_parser, main, run
