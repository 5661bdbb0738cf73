"""
Wall-clock timing of the stages of one command (cover search, measure
bounds, pipeline, ...). Timings never enter a JSON report because they
differ between identical runs; with record_time on they are saved under
time_records/.
"""

import json
from collections import defaultdict
from contextlib import contextmanager
from pathlib import Path
from time import perf_counter
from typing import Dict, List

from numpy import mean

__all__ = [
    'TimeRecorder',
]


class TimeRecorder(object):
    """
    Records are keyed "command/stage":

    >>> recorder = TimeRecorder('measure')
    >>> with recorder('bounds'):
    ...     pass
    >>> list(recorder.records)
    ['measure/bounds']
    """

    def __init__(self, command: str, no_record: bool = False):
        self.command = command
        self.no_record = no_record
        self.records: Dict[str, List[float]] = defaultdict(list)

    @contextmanager
    def __call__(self, stage: str):
        if self.no_record:
            yield
            return
        start = perf_counter()
        try:
            yield
        finally:
            self.records[f'{self.command}/{stage}'].append(perf_counter() - start)

    def num_records(self) -> Dict[str, int]:
        return {key: len(values) for key, values in self.records.items()}

    @property
    def total_time(self) -> float:
        return float(sum(sum(values) for values in self.records.values()))

    def asdict(self) -> dict:
        return dict(
            command=self.command,
            total_time=self.total_time,
            stages={
                key: dict(num=len(values), mean=float(mean(values)), records=list(values))
                for key, values in sorted(self.records.items())
            },
        )

    def save(self, path: str or Path):
        with open(str(path), 'w') as f:
            json.dump(self.asdict(), f, indent=2)

    def get_table_str(self) -> str:
        table = [['', 'Num records', 'Mean (s)', 'Total (s)']] + [
            [key, str(len(values)), f'{mean(values):.2e}', f'{sum(values):.2e}']
            for key, values in sorted(self.records.items())
        ]
        widths = [max(len(row[i]) for row in table) + 3 for i in range(len(table[0]))]
        return '\n'.join(''.join(cell.rjust(w) for cell, w in zip(row, widths)) for row in table)

    def __repr__(self):
        return f'TimeRecorder(command={self.command}, total_time={self.total_time:.2e})'
