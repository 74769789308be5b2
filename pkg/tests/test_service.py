import json

import pytest
from fastapi.testclient import TestClient

from tinylca.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestProfiles:
    def test_lists_bundled_profiles_sorted(self, client):
        response = client.get("/api/v1/profiles")
        assert response.status_code == 200
        payload = response.json()
        assert payload["schema_version"] == 1
        names = [p["name"] for p in payload["profiles"]]
        assert names == sorted(names)
        assert names == ["high-cost", "low-cost", "medium-cost"]
        tiers = {p["name"]: p["tier"] for p in payload["profiles"]}
        assert tiers["high-cost"] == "HighCost"

    def test_empty_profiles_dir(self, tmp_path):
        import shutil

        from tinylca.datastore import bundled_data_dir

        data = tmp_path / "data"
        shutil.copytree(bundled_data_dir(), data)
        for p in (data / "profiles").glob("*.json"):
            p.unlink()
        empty_client = TestClient(create_app(data_dir=data))
        response = empty_client.get("/api/v1/profiles")
        assert response.status_code == 200
        assert response.json()["profiles"] == []


class TestFootprint:
    def test_high_cost_high_bound(self, client):
        response = client.post("/api/v1/footprint", json={"profile": "high-cost", "bound": "high"})
        assert response.status_code == 200
        payload = response.json()
        assert payload["embodied_g"] == pytest.approx(7060.0, rel=1e-9)
        assert payload["total_g"] == pytest.approx(7072.49, abs=0.01)
        assert payload["per_block_g"]["PowerSupply"] == max(payload["per_block_g"].values())

    def test_lifetime_override(self, client):
        response = client.post(
            "/api/v1/footprint",
            json={"profile": "high-cost", "operational": {"lifetime_years": 10}},
        )
        payload = response.json()
        assert payload["operational_g"] == pytest.approx(41.6, abs=0.1)
        # the echo makes the override explicit
        assert payload["parameters"]["operational"]["lifetime_years"] == 10

    def test_operational_share_below_one_percent(self, client):
        payload = client.post("/api/v1/footprint", json={"profile": "high-cost"}).json()
        assert payload["operational_g"] / payload["total_g"] < 0.01

    def test_inline_device(self, client):
        body = {
            "device": {
                "name": "inline-widget",
                "components": [
                    {"block": "Sensing", "label": "custom", "low_g": 5, "typical_g": 10, "high_g": 20},
                    {"block": "Processing", "label": "mcu-90nm"},
                ],
                "operational": {"power_mw": 1, "lifetime_years": 3, "grid_intensity_g_per_kwh": 475},
            },
            "bound": "typical",
        }
        payload = client.post("/api/v1/footprint", json=body).json()
        assert payload["embodied_g"] == pytest.approx(96.0)

    def test_malformed_body_is_400(self, client):
        response = client.post("/api/v1/footprint", json={"profile": 42})
        assert response.status_code == 400
        assert response.json()["detail"]

    def test_unexpected_key_is_400(self, client):
        response = client.post("/api/v1/footprint", json={"profile": "high-cost", "boundz": "hi"})
        assert response.status_code == 400

    def test_unknown_profile_is_404(self, client):
        response = client.post("/api/v1/footprint", json={"profile": "mega-cost"})
        assert response.status_code == 404
        assert "mega-cost" in response.json()["detail"]

    def test_profile_and_device_both_given_is_400(self, client):
        response = client.post(
            "/api/v1/footprint",
            json={"profile": "high-cost", "device": {"components": []}},
        )
        assert response.status_code == 400


class TestFleetEndpoints:
    BASELINE = {
        "count": 250_000_000_000,
        "profile": "high-cost",
        "horizon_years": 3.0,
        "reductions": {"residential": 0.2},
        "global_gt": 32.8,
    }

    def test_net_baseline(self, client):
        response = client.post("/api/v1/fleet/net", json=self.BASELINE)
        assert response.status_code == 200
        payload = response.json()
        assert payload["fleet_footprint_mt"] == pytest.approx(1765.0, rel=5e-3)
        assert payload["avoided_mt"] == pytest.approx(1181.0, rel=5e-3)
        assert payload["net_impact_mt"] > 0

    def test_zero_reductions_net_equals_footprint(self, client):
        body = dict(self.BASELINE, reductions={})
        payload = client.post("/api/v1/fleet/net", json=body).json()
        assert payload["net_impact_mt"] == payload["fleet_footprint_mt"]
        assert payload["fleet_footprint_mt"] == pytest.approx(1765.0, rel=5e-3)

    def test_breakeven_baseline(self, client):
        payload = client.post("/api/v1/fleet/breakeven", json=self.BASELINE).json()
        assert payload["break_even_rate"] == pytest.approx(0.0063, abs=1e-3)

    def test_unknown_sector_is_400(self, client):
        body = dict(self.BASELINE, reductions={"agriculture": 0.2})
        response = client.post("/api/v1/fleet/net", json=body)
        assert response.status_code == 400
        assert "agriculture" in str(response.json()["detail"])

    def test_defaults_echoed(self, client):
        payload = client.post(
            "/api/v1/fleet/net", json={"count": 1000, "profile": "low-cost"}
        ).json()
        params = payload["parameters"]
        assert params["horizon_years"] == 3.0
        assert params["global_emissions_gt"] == 32.8
        assert params["bound"] == "typical"
        assert params["per_device_g"] > 0


class TestProject:
    def test_default_linear(self, client):
        response = client.post("/api/v1/project", json={"thresholds": [50, 100, 250]})
        assert response.status_code == 200
        years = {c["threshold_billion"]: c["year"] for c in response.json()["crossings"]}
        assert years[50] == 2041
        assert years[250] == 2144

    def test_never_is_422(self, client):
        body = {
            "family": "linear", "base_year": 2023, "base_count_billion": 15.0,
            "slope_billion_per_year": 0.0, "thresholds": [250],
        }
        response = client.post("/api/v1/project", json=body)
        assert response.status_code == 422
        detail = response.json()["detail"]
        assert detail["reason"] == "never"
        assert detail["unreachable_thresholds"] == [250]

    def test_fit_points(self, client):
        body = {"family": "exponential", "points": [[2032, 50], [2043, 250]],
                "thresholds": [250]}
        response = client.post("/api/v1/project", json=body)
        assert response.json()["crossings"][0]["year"] == 2043

    def test_bad_family_is_400(self, client):
        response = client.post("/api/v1/project", json={"family": "cubic", "thresholds": [1]})
        assert response.status_code == 400


class TestServiceDiscipline:
    def test_stateless_repeatable(self, client):
        body = {"count": 10**9, "profile": "medium-cost", "reductions": {"industry": 0.1}}
        first = client.post("/api/v1/fleet/net", json=body).json()
        second = client.post("/api/v1/fleet/net", json=body).json()
        assert first == second

    def test_every_response_carries_schema_version(self, client):
        assert client.get("/api/v1/profiles").json()["schema_version"] == 1
        assert client.post("/api/v1/footprint", json={"profile": "low-cost"}).json()[
            "schema_version"] == 1
        assert client.post("/api/v1/project", json={"thresholds": [50]}).json()[
            "schema_version"] == 1

    def test_static_mount_serves_ui(self, tmp_path):
        (tmp_path / "index.html").write_text("<html><body>explorer</body></html>")
        ui_client = TestClient(create_app(static_dir=tmp_path))
        response = ui_client.get("/")
        assert response.status_code == 200
        assert "explorer" in response.text
        # API still reachable under the mount
        assert ui_client.get("/api/v1/profiles").status_code == 200
