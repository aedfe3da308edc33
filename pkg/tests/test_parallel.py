import pytest

from divfree.parallel import chunked, fan_out, resolve_jobs


def evens(xs):
    return [x for x in xs if x % 2 == 0]


def test_chunked_covers_everything():
    items = list(range(17))
    parts = chunked(items, 4)
    assert sorted(x for p in parts for x in p) == items


def test_resolve_jobs(monkeypatch):
    monkeypatch.setenv("DIVFREE_JOBS", "3")
    assert resolve_jobs() == 3
    assert resolve_jobs(1) == 1
    monkeypatch.setenv("DIVFREE_JOBS", "many")
    with pytest.raises(ValueError):
        resolve_jobs()


@pytest.mark.parametrize("jobs", [1, 2])
def test_fan_out_is_order_preserving(jobs):
    items = list(range(200))
    assert fan_out(evens, items, jobs, min_items=10) == evens(items)
