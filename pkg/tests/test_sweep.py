import threading

import pytest

from resurgamma.numerics import DomainError
from resurgamma.sweep import Sweep, run_grid


def _square(index, context):
    return index * index


def _precision(context):
    return context.precision_bits, threading.current_thread().name, id(context.mp)


def _failing(context):
    raise DomainError('bad grid point')


def _broken(context):
    raise KeyError('unexpected')


def test_results_keep_grid_order(context):
    tasks = [lambda ctx, i=i: _square(i, ctx) for i in range(20)]
    outcomes = run_grid(tasks, context, num_workers=4)
    assert [o.index for o in outcomes] == list(range(20))
    assert [o.result for o in outcomes] == [i * i for i in range(20)]
    assert all(o.ok for o in outcomes)


def test_workers_use_their_own_contexts(context):
    outcomes = Sweep(context, num_workers=3).run([_precision] * 9)
    assert {o.result[0] for o in outcomes} == {context.precision_bits}
    assert all(o.result[2] != id(context.mp) for o in outcomes)
    assert {o.result[1] for o in outcomes} <= {'w0', 'w1', 'w2'}


@pytest.mark.parametrize('workers', [1, 3])
def test_failures_are_reported_per_point(context, workers):
    outcomes = run_grid([_failing, _precision, _failing], context, num_workers=workers)
    assert [o.ok for o in outcomes] == [False, True, False]
    assert isinstance(outcomes[0].error, DomainError)


def test_unexpected_errors(context):
    outcomes = run_grid([_broken, _precision], context, num_workers=2)
    assert isinstance(outcomes[0].error, KeyError)
    assert outcomes[1].ok
    with pytest.raises(KeyError):
        run_grid([_broken], context, num_workers=1)
