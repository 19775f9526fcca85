"""
    Logger for imbalance-metrics runs
"""

import logging


class MetricsLogger(logging.Logger):
    def __init__(self, name: str, level: int = logging.INFO):
        super().__init__(name, level)

    def info_def_run(self, command: str, p: int, n: int) -> None:
        if p == n:
            balance = "balanced"
        else:
            balance = "majority positive" if p > n else "majority negative"

        super().info(
            f"[METRICS] Running {command} with the following characteristics "
            f"- P={p} | N={n} | {balance}."
        )


logger = MetricsLogger(name="MetricsLogger")
