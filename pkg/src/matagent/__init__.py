"""matagent: an agentic materials-science platform at desk scale.

LLM-planned tool workflows over a registry of deterministic scientific
tools (structure building, powder XRD, stub property models), exposed
through a rate-limited REST gateway, with a benchmark harness for
throughput and parity statistics.
"""

__version__ = "0.1.0"
