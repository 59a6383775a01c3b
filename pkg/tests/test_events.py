import numpy as np
import pytest

from components.continuation import engine
from components.continuation.points import make_point
from components.exceptions import NoConvergence
from components.models.branches import Event, EventKind
from components.models.settings import ContinuationSettings
from components.models.states import Grid, StateVector
from components.numerics.stability import summarize
from conftest import row

P = row(1, d1="1/10", d2="1/10")


def point_with(eigenvalues, arclength=0.0, tangent_sign=1.0):
    state = StateVector.constant(Grid(5), 13 / 8, 1 / 8, param="d", value=0.1)
    tangent = np.zeros(state.data.size + 1)
    tangent[-1] = tangent_sign
    return make_point(
        P,
        state,
        arclength=arclength,
        tangent=tangent,
        summary=summarize(np.array(eigenvalues, dtype=complex)),
    )


def kinds(start, end):
    found = engine._indicators(start, end, ContinuationSettings())
    return [indicator.kind for indicator in found]


def test_collision_of_unstable_real_eigenvalues_is_no_event():
    start = point_with([2.0, 1.0, -1.0])
    end = point_with([1.5 + 0.5j, 1.5 - 0.5j, -1.0])
    assert start.stability_index == end.stability_index == 2
    assert start.unstable_real == 2 and end.unstable_complex == 2
    assert kinds(start, end) == []
    assert kinds(end, start) == []


def test_collision_next_to_a_real_crossing():
    start = point_with([1.0 + 0.5j, 1.0 - 0.5j, 0.2])
    end = point_with([3.0, 0.5, -0.2])
    assert kinds(start, end) == [EventKind.BRANCH_POINT]


def test_real_crossing_is_a_branch_point():
    assert kinds(point_with([0.5, -1.0]), point_with([-0.5, -1.0])) == [
        EventKind.BRANCH_POINT
    ]


def test_pair_crossing_is_a_hopf():
    start = point_with([-0.1 + 1j, -0.1 - 1j, -2.0])
    end = point_with([0.1 + 1j, 0.1 - 1j, -2.0])
    assert kinds(start, end) == [EventKind.HOPF]


def test_pair_crossing_during_a_collision_is_still_a_hopf():
    start = point_with([-0.1 + 1j, -0.1 - 1j, 2.0, 1.0])
    end = point_with([0.1 + 1j, 0.1 - 1j, 1.5 + 0.2j, 1.5 - 0.2j])
    assert kinds(start, end) == [EventKind.HOPF]


def test_fold_takes_precedence_over_a_real_crossing():
    start = point_with([0.5, -1.0])
    end = point_with([-0.5, -1.0], tangent_sign=-1.0)
    assert kinds(start, end) == [EventKind.FOLD]


def test_critical_eigenvalue_is_recorded():
    point = point_with([0.01 + 2j, 0.01 - 2j, -3.0])
    assert point.critical_imag == pytest.approx(2.0)
    assert point_with([0.01, -3.0]).critical_imag == 0.0


def _fake_refine(stations):
    def refine(p, start, end, ds, param, indicator, settings):
        point = point_with(*stations[indicator.kind])
        event = Event(
            kind=indicator.kind,
            value=point.value,
            arclength=point.arclength,
            bracket=(start.arclength, end.arclength),
            point=point,
        )
        return event, point

    return refine


def _fire(*found):
    def indicators(start, end, settings):
        return [engine._Indicator(kind, lambda point: 0) for kind in found]

    return indicators


def test_events_come_back_in_arclength_order(monkeypatch):
    monkeypatch.setattr(
        engine, "_indicators", _fire(EventKind.BRANCH_POINT, EventKind.HOPF)
    )
    monkeypatch.setattr(
        engine,
        "_refine",
        _fake_refine(
            {
                EventKind.BRANCH_POINT: ([-0.5, -1.0], 0.8),
                EventKind.HOPF: ([0.1 + 1j, 0.1 - 1j], 0.3),
            }
        ),
    )
    start, end = point_with([-1.0], 0.0), point_with([-1.0], 1.0)
    located = engine._locate_events(P, start, end, 1.0, "d", ContinuationSettings())
    stations = [point.arclength for _, point in located]
    assert stations == [0.3, 0.8]
    assert [point.event_flag for _, point in located] == ["Hopf", "BranchPoint"]


def test_events_on_one_station_share_a_point(monkeypatch):
    monkeypatch.setattr(
        engine, "_indicators", _fire(EventKind.FOLD, EventKind.HOPF)
    )
    monkeypatch.setattr(
        engine,
        "_refine",
        _fake_refine(
            {
                EventKind.FOLD: ([-0.5], 0.5),
                EventKind.HOPF: ([0.1 + 1j, 0.1 - 1j], 0.5 + 1e-10),
            }
        ),
    )
    start, end = point_with([-1.0], 0.0), point_with([-1.0], 1.0)
    located = engine._locate_events(P, start, end, 1.0, "d", ContinuationSettings())
    (fold, first), (hopf, second) = located
    assert first is second
    assert hopf.point is first
    assert hopf.arclength == fold.arclength
    assert first.event_flag == "Fold"


def test_hopf_without_an_oscillatory_critical_eigenvalue_is_dropped(monkeypatch):
    monkeypatch.setattr(engine, "_indicators", _fire(EventKind.HOPF))
    monkeypatch.setattr(
        engine, "_refine", _fake_refine({EventKind.HOPF: ([0.0, -1.0], 0.5)})
    )
    start, end = point_with([-1.0], 0.0), point_with([-1.0], 1.0)
    assert engine._locate_events(P, start, end, 1.0, "d", ContinuationSettings()) == []


def test_failed_refinement_reuses_the_end_point(monkeypatch):
    def fail(*args, **kwargs):
        raise NoConvergence("no")

    monkeypatch.setattr(engine, "_evaluate", fail)
    start = point_with([0.5, -1.0], 0.0)
    end = point_with([-0.5, -1.0], 0.1)
    located = engine._locate_events(P, start, end, 0.1, "d", ContinuationSettings())
    [(event, point)] = located
    assert point is end
    assert event.kind == EventKind.BRANCH_POINT
    assert end.event_flag == "BranchPoint"
