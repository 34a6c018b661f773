import json

import pytest

from application.cli import main


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "success"
    assert response.json()["data"]["name"] == "spin-tunneling-lab"


def test_effective_spectrum_matches_the_cli(client, capsys):
    response = client.post("/effective/spectrum", json={"config": "Y3", "two_j": 2, "w": 0.5})
    assert response.status_code == 200
    data = response.json()["data"]

    assert main(["effective", "spectrum", "--config", "Y3", "--two-j", "2", "--w", "0.5"]) == 0
    assert json.loads(capsys.readouterr().out) == data


def test_group_decompose(client):
    response = client.post("/group/decompose", json={"config": "O3", "two_j": 3})
    assert response.status_code == 200
    assert response.json()["data"]["irreps"] == {"G'": 2}


def test_geometry_dump(client):
    response = client.post("/geometry/dump", json={"config": "O2", "alpha": 0.5})
    assert response.status_code == 200
    assert len(response.json()["data"]["vertices"]) == 12


def test_exact_spectrum(client):
    response = client.post("/exact/spectrum", json={"two_j": 48, "phi": 0.0})
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["ground_size"] == 6
    assert len(data["eigenvalues"]) == 49


def test_wkb_and_estimates(client):
    c = client.post("/wkb/c-of-u", json={"u": 0.0}).json()["data"]["rows"][0]["c"]
    assert c == pytest.approx(0.5493061443340549, abs=1e-6)
    tau = client.post("/estimate/tau", json={"rho": 10, "delta": 10, "omega": 1e10, "sound_velocity": 1e5})
    assert 0.03 <= tau.json()["data"]["rows"][0]["value"] <= 0.3


def test_thermo_and_dynamics(client):
    chi = client.post("/thermo/chi", json={"config": "O4", "two_j": 0, "tmin": 0.01, "tmax": 1.0, "tsteps": 3})
    assert chi.status_code == 200
    assert chi.json()["data"]["low_temperature"]["van_vleck"] == pytest.approx(1 / 3)
    moment = client.post("/dynamics/oscillate", json={"config": "O4", "two_j": 1, "tsteps": 5})
    assert moment.json()["data"]["rows"][0]["M"] == pytest.approx(1.0)


def test_application_errors_map_to_status_codes(client):
    bad_config = client.post("/effective/spectrum", json={"config": "Q7", "two_j": 0})
    assert bad_config.status_code == 400
    assert bad_config.json()["detail"]["error_code"] == "ARG_001"

    outside = client.post("/wkb/c-of-u", json={"u": 0.5})
    assert outside.status_code == 422
    assert outside.json()["detail"]["error_code"] == "DOMAIN_001"


def test_request_validation(client):
    assert client.post("/effective/spectrum", json={"config": "O4"}).status_code == 422
    assert client.post("/effective/spectrum", json={"config": "O4", "two_j": 0, "colour": "red"}).status_code == 422


@pytest.mark.parametrize(
    "path, body",
    [
        ("/exact/spectrum", {"two_j": 24, "phi": 0.2, "colour": "red"}),
        ("/wkb/c-of-u", {"u": 0.0, "colour": "red"}),
        ("/estimate/dipolar", {"g": 2.0, "two_j": 7, "density": 1e22, "concentration": 1.0, "colour": "red"}),
    ],
)
def test_unknown_fields_are_rejected(client, path, body):
    assert client.post(path, json=body).status_code == 422
