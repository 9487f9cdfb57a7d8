"""planforge: build PDDL world models with an LLM in the loop, audit and
correct them with natural-language feedback, and plan with the result."""

__version__ = "0.1.0"
