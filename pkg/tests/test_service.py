import json
from urllib.parse import quote

import pytest
from fastapi.testclient import TestClient
from PIL import Image

from huerank import IndexStore, build_index
from huerank.cli import main
from huerank.service import create_app
from conftest import write_image


@pytest.fixture
def mixed_corpus(tmp_path):
    root = tmp_path / "images"
    root.mkdir()
    write_image(root / "a.png", (100, 100), (10, 10, 10))
    write_image(root / "b.png", (100, 100), (200, 0, 0))
    write_image(root / "c.png", (50, 50), (0, 200, 0))
    return root


@pytest.fixture
def mixed_client(mixed_corpus, tmp_path):
    store = build_index(mixed_corpus).store
    app = create_app(store, mixed_corpus, thumb_cache=tmp_path / "thumbs")
    return TestClient(app)


@pytest.fixture
def rmean8_client(rmean8_store, tmp_path):
    app = create_app(rmean8_store, tmp_path, thumb_cache=tmp_path / "thumbs")
    return TestClient(app)


class TestHealth:
    def test_healthz(self, mixed_client):
        resp = mixed_client.get("/healthz")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok", "images": 3}


class TestListImages:
    def test_all_images_sorted(self, mixed_client):
        resp = mixed_client.get("/api/images")
        assert resp.status_code == 200
        body = resp.json()
        assert [item["name"] for item in body] == ["a.png", "b.png", "c.png"]
        assert body[0]["threshold"] == 10000
        assert body[0]["thumbnail_url"] == "/api/images/a.png/thumbnail"

    def test_group_filter(self, mixed_client):
        resp = mixed_client.get("/api/images", params={"group": 2500})
        assert resp.status_code == 200
        assert [item["name"] for item in resp.json()] == ["c.png"]

    def test_group_filter_empty_match(self, mixed_client):
        resp = mixed_client.get("/api/images", params={"group": 77})
        assert resp.status_code == 200
        assert resp.json() == []


class TestFeatures:
    def test_fixture_values(self, stats7_store, tmp_path):
        client = TestClient(create_app(stats7_store, tmp_path))
        resp = client.get("/api/images/818.jpg/features")
        assert resp.status_code == 200
        body = resp.json()
        assert body["std_r"] == 10.31
        assert body["mean_r"] == 124

    def test_unknown_name_is_json_404(self, mixed_client):
        resp = mixed_client.get("/api/images/ghost.png/features")
        assert resp.status_code == 404
        assert "error" in resp.json()

    def test_url_encoded_name(self, tmp_path):
        root = tmp_path / "images"
        root.mkdir()
        write_image(root / "im age.png", (4, 4), (9, 9, 9))
        store = build_index(root, group_check=False).store
        client = TestClient(create_app(store, root))
        resp = client.get(f"/api/images/{quote('im age.png')}/features")
        assert resp.status_code == 200
        assert resp.json()["name"] == "im age.png"


class TestThumbnail:
    def test_downscales_longest_side(self, tmp_path):
        root = tmp_path / "images"
        root.mkdir()
        write_image(root / "wide.png", (512, 300), (50, 60, 70))
        store = build_index(root, group_check=False).store
        client = TestClient(create_app(store, root, thumb_cache=tmp_path / "thumbs"))
        resp = client.get("/api/images/wide.png/thumbnail")
        assert resp.status_code == 200
        assert resp.headers["content-type"] == "image/jpeg"
        import io

        thumb = Image.open(io.BytesIO(resp.content))
        assert max(thumb.size) <= 256
        assert (tmp_path / "thumbs").exists()

    def test_small_image_not_upscaled(self, mixed_client):
        resp = mixed_client.get("/api/images/c.png/thumbnail")
        assert resp.status_code == 200
        import io

        thumb = Image.open(io.BytesIO(resp.content))
        assert thumb.size == (50, 50)

    def test_cache_hit_reuses_file(self, tmp_path):
        root = tmp_path / "images"
        root.mkdir()
        write_image(root / "x.png", (64, 64), (1, 2, 3))
        store = build_index(root, group_check=False).store
        cache = tmp_path / "thumbs"
        client = TestClient(create_app(store, root, thumb_cache=cache))
        assert client.get("/api/images/x.png/thumbnail").status_code == 200
        cached = list(cache.glob("*.jpg"))
        assert len(cached) == 1
        assert client.get("/api/images/x.png/thumbnail").status_code == 200
        assert list(cache.glob("*.jpg")) == cached

    def test_vanished_source_is_502(self, tmp_path):
        root = tmp_path / "images"
        root.mkdir()
        target = write_image(root / "gone.png", (32, 32), (5, 5, 5))
        store = build_index(root, group_check=False).store
        client = TestClient(create_app(store, root, thumb_cache=tmp_path / "thumbs"))
        target.unlink()
        resp = client.get("/api/images/gone.png/thumbnail")
        assert resp.status_code == 502
        assert "error" in resp.json()

    def test_unknown_name_is_404(self, mixed_client):
        assert mixed_client.get("/api/images/ghost.png/thumbnail").status_code == 404


class TestQueryEndpoint:
    def _query(self, client, **overrides):
        body = {
            "query_name": "998.jpg", "method": "pm1", "channels": "r",
            "df": 1e9, "scope": "corpus", "top": 8,
        }
        body.update(overrides)
        return client.post("/api/query", json=body)

    def test_reference_order(self, rmean8_client):
        resp = self._query(rmean8_client)
        assert resp.status_code == 200
        body = resp.json()
        assert [r["name"] for r in body["results"]] == [
            "998.jpg", "997.jpg", "995.jpg", "993.jpg",
            "992.jpg", "991.jpg", "996.jpg", "994.jpg",
        ]
        assert [r["rank"] for r in body["results"]] == list(range(1, 9))
        assert body["query"]["name"] == "998.jpg"
        assert body["query"]["mean_r"] == 63.36859
        assert body["excluded_count"] == 0
        for r in body["results"]:
            assert r["thumbnail_url"].endswith("/thumbnail")

    def test_df_zero_returns_query_first(self, rmean8_client):
        resp = self._query(rmean8_client, query_name="995.jpg", df=0)
        body = resp.json()
        assert body["results"][0] == {
            "name": "995.jpg", "score": 0.0, "rank": 1,
            "thumbnail_url": "/api/images/995.jpg/thumbnail",
        }

    def test_excluded_count_reflects_df(self, rmean8_client):
        resp = self._query(rmean8_client, query_name="995.jpg", df=25)
        body = resp.json()
        assert len(body["results"]) == 7
        assert body["excluded_count"] == 1

    def test_arity_violation_is_400(self, rmean8_client):
        resp = self._query(rmean8_client, channels="rg")
        assert resp.status_code == 400
        assert "PM1" in resp.json()["error"]

    def test_unknown_query_is_404(self, rmean8_client):
        resp = self._query(rmean8_client, query_name="missing.jpg")
        assert resp.status_code == 404

    def test_invalid_top_is_400(self, rmean8_client):
        resp = self._query(rmean8_client, top=0)
        assert resp.status_code == 400

    def test_invalid_scope_is_400(self, rmean8_client):
        resp = self._query(rmean8_client, scope="universe")
        assert resp.status_code == 400

    def test_top_truncates_but_excluded_does_not_move(self, rmean8_client):
        resp = self._query(rmean8_client, top=3)
        body = resp.json()
        assert len(body["results"]) == 3
        assert body["excluded_count"] == 0


class TestCliParity:
    SPECS = [
        ("998.jpg", "pm1", "r", "1e9", "corpus"),
        ("995.jpg", "pm1", "r", "25", "corpus"),
        ("818.jpg", "pm5", "rg", "1e9", "group"),
        ("828.jpg", "pm4", "rgb", "40", "corpus"),
        ("824.jpg", "pm2", "gb", "15", "group"),
    ]

    @pytest.mark.parametrize("query,method,channels,df,scope", SPECS)
    def test_api_equals_cli(self, query, method, channels, df, scope,
                            rmean8_path, stats7_path, tmp_path, capsys):
        index_path = rmean8_path if query.startswith("99") else stats7_path
        store = IndexStore.load(index_path)
        client = TestClient(create_app(store, tmp_path))
        code = main([
            "query", "--index", str(index_path), "--query", query,
            "--method", method, "--channels", channels, "--df", df,
            "--scope", scope, "--format", "json", "--top", "50",
        ])
        cli_rows = json.loads(capsys.readouterr().out)
        assert code == 0
        resp = client.post("/api/query", json={
            "query_name": query, "method": method, "channels": channels,
            "df": float(df), "scope": scope, "top": 50,
        })
        api_rows = resp.json()["results"]
        assert [r["name"] for r in api_rows] == [r["name"] for r in cli_rows]
        assert [r["score"] for r in api_rows] == [r["score"] for r in cli_rows]
        assert [r["rank"] for r in api_rows] == [r["rank"] for r in cli_rows]


class TestRoutingAndStatic:
    def test_unknown_route_is_json_404(self, mixed_client):
        resp = mixed_client.get("/api/nope")
        assert resp.status_code == 404
        assert "error" in resp.json()

    def test_webroot_served_at_root(self, mixed_corpus, tmp_path):
        webroot = tmp_path / "web"
        webroot.mkdir()
        (webroot / "index.html").write_text("<html><body>ui</body></html>")
        store = build_index(mixed_corpus).store
        client = TestClient(create_app(store, mixed_corpus, webroot=webroot))
        resp = client.get("/")
        assert resp.status_code == 200
        assert "ui" in resp.text
        assert client.get("/healthz").json()["status"] == "ok"

    def test_unknown_route_stays_json_404_with_webroot(self, mixed_corpus, tmp_path):
        webroot = tmp_path / "web"
        webroot.mkdir()
        (webroot / "index.html").write_text("<html></html>")
        store = build_index(mixed_corpus).store
        client = TestClient(create_app(store, mixed_corpus, webroot=webroot))
        for path in ("/api/nope", "/missing-page"):
            resp = client.get(path)
            assert resp.status_code == 404
            assert resp.headers["content-type"].startswith("application/json")
            assert "error" in resp.json()
