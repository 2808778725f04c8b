'''Thread pool for parameter-grid sweeps.

Tasks are callables taking a PrecisionContext. Each worker owns a forked
context, and results come back ordered by grid index.
'''
import time
import queue
import logging
import threading

from dataclasses import dataclass

from .numerics import ResurgammaError


logger = logging.getLogger(__name__)

_STOP = object()


@dataclass(frozen=True)
class SweepOutcome:
    index: int
    result: object = None
    error: Exception = None

    @property
    def ok(self):
        return self.error is None


class SweepWorker(threading.Thread):

    def __init__(self, worker_inputs, worker_outputs, context, name=None):
        super().__init__(name=name, daemon=True)
        self.worker_inputs = worker_inputs
        self.worker_outputs = worker_outputs
        self.context = context.fork()

    def run(self):
        while True:
            # Get next grid point
            item = self.worker_inputs.get()
            if item is _STOP:
                break
            index, task = item

            try:
                outcome = SweepOutcome(index, result=task(self.context))
            except (ResurgammaError, ArithmeticError, ValueError) as e:
                logger.info(f'grid point {index} failed: {e}')
                outcome = SweepOutcome(index, error=e)
            except Exception as e:
                # anything else would leave the sweep waiting on this point forever
                logger.exception(f'grid point {index} raised')
                outcome = SweepOutcome(index, error=e)

            # Report results back to the sweep
            self.worker_outputs.put(outcome)


class Sweep:

    def __init__(self, context, num_workers=4, report_every=5.0):
        self.context = context
        self.report_every = report_every
        self.worker_inputs = queue.Queue()
        self.worker_outputs = queue.Queue()
        self.workers = [
            SweepWorker(self.worker_inputs, self.worker_outputs, context, name=f'w{i}')
            for i in range(max(1, num_workers))
        ]

    def print_report(self, done, total):
        logger.info(f'inputs: {self.worker_inputs.qsize()} | done: {done}/{total}')

    def run(self, tasks):
        tasks = list(tasks)
        for index, task in enumerate(tasks):
            self.worker_inputs.put((index, task))
        for _ in self.workers:
            self.worker_inputs.put(_STOP)

        # Start workers
        for worker in self.workers:
            worker.start()

        # Collect every outcome, then restore grid order
        outcomes = []
        last_report = time.monotonic()
        while len(outcomes) < len(tasks):
            outcomes.append(self.worker_outputs.get())
            if time.monotonic() - last_report > self.report_every:
                self.print_report(len(outcomes), len(tasks))
                last_report = time.monotonic()
        for worker in self.workers:
            worker.join()
        return sorted(outcomes, key=lambda o: o.index)


def run_grid(tasks, context, num_workers=1):
    '''Evaluate tasks in order; more than one worker runs them on a Sweep.'''
    if num_workers <= 1:
        outcomes = []
        for index, task in enumerate(tasks):
            try:
                outcomes.append(SweepOutcome(index, result=task(context)))
            except (ResurgammaError, ArithmeticError, ValueError) as e:
                logger.info(f'grid point {index} failed: {e}')
                outcomes.append(SweepOutcome(index, error=e))
        return outcomes
    return Sweep(context, num_workers=num_workers).run(tasks)
