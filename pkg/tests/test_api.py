"""Tests for the HTTP API, run in-process with FastAPI's TestClient."""

from collections.abc import Generator

import pytest
from fastapi.testclient import TestClient

from app.dependencies.tables import get_generator_table, get_metric_service
from app.main import app
from app.services.metric import MetricService

API_V1_STR = "/api/v1"
ELEMENTS = f"{API_V1_STR}/elements"


@pytest.fixture(scope="module")
def client() -> Generator[TestClient, None, None]:
    """Client bound to the application.

    Yields:
        The test client.
    """
    with TestClient(app) as test_client:
        yield test_client


def test_health(client: TestClient) -> None:
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok", "service": "nv-thompson"}

    response = client.get("/health/generators")
    assert response.json()["status"] == "ok"
    assert response.json()["generators"] == 26


def test_normal_form(client: TestClient) -> None:
    """Two words for one element share the canonical key."""
    first = client.post(f"{ELEMENTS}/nf", json={"word": "x0 x1"}).json()
    second = client.post(f"{ELEMENTS}/nf", json={"word": "x0 x1 y0 y0^-1"}).json()
    assert first["key"] == second["key"]
    assert first["identity"] is False


def test_multiply_and_invert(client: TestClient) -> None:
    response = client.post(f"{ELEMENTS}/mul", json={"left": {"word": "x0"}, "right": {"word": "x0^-1"}})
    assert response.status_code == 200
    assert response.json()["identity"] is True

    element = "n=2 m=3\n00,- -> 0,-\n01,- -> 10,-\n1,- -> 11,-"
    inverse = client.post(f"{ELEMENTS}/inv", json={"element": element}).json()
    direct = client.post(f"{ELEMENTS}/nf", json={"word": "x0^-1"}).json()
    assert inverse["key"] == direct["key"]


def test_evaluate(client: TestClient) -> None:
    response = client.post(f"{ELEMENTS}/eval", json={"input": {"word": "x0"}, "u1": "01", "u2": "1"})
    assert response.json() == {"u1": "10", "u2": "1"}


def test_length(client: TestClient) -> None:
    response = client.post(f"{ELEMENTS}/len", json={"input": {"word": "x0 y0"}, "max_radius": 1})
    body = response.json()
    assert response.status_code == 200
    assert body["exact"] is False
    assert body["lower"] == 2

    body = client.post(f"{ELEMENTS}/len", json={"input": {"word": "y1^-1"}, "max_radius": 1}).json()
    assert body["exact"] is True
    assert body["witness"] == "y_1^-1"


def test_domain_errors_are_422(client: TestClient) -> None:
    response = client.post(f"{ELEMENTS}/nf", json={"word": "q7"})
    assert response.status_code == 422
    assert response.json()["code"] == "unknown_symbol"

    response = client.post(f"{ELEMENTS}/nf", json={"word": "x0", "element": "n=2 m=1\n-,- -> -,-"})
    assert response.status_code == 422

    response = client.post(f"{ELEMENTS}/eval", json={"input": {"word": "x0"}, "u1": "0"})
    assert response.json()["code"] == "prefix_too_short"


def test_budget_errors_are_413(client: TestClient) -> None:
    app.dependency_overrides[get_metric_service] = lambda: MetricService(get_generator_table(), node_cap=10)
    try:
        response = client.post(f"{ELEMENTS}/len", json={"input": {"word": "x0"}, "max_radius": 2})
    finally:
        app.dependency_overrides.clear()
    assert response.status_code == 413
    assert response.json()["code"] == "resource_budget_exceeded"


def test_generators(client: TestClient) -> None:
    body = client.get(f"{API_V1_STR}/generators").json()
    assert body["complete"] is True
    assert body["missing"] == []
    assert [g["symbol"] for g in body["generators"]][:3] == ["x_0", "x_1", "x_2"]

    detail = client.get(f"{API_V1_STR}/generators/x0").json()
    assert detail["pairs"] == 3
    assert detail["element"].startswith("n=2 m=3")

    response = client.get(f"{API_V1_STR}/generators/gamma_9")
    assert response.status_code == 422
    assert response.json()["code"] == "unknown_symbol"

    report = client.get(f"{API_V1_STR}/generators/validate").json()
    assert report["complete"] is True
    assert all(check["ok"] for check in report["checks"])
