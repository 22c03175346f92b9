"""
Protocol document API tests.
"""
import pytest

from app.constants.error_codes import ErrorCode


@pytest.mark.asyncio
async def test_validate_reports_issues_as_data(client):
    """Test that issues come back as data with status 200."""
    source = "machine #1 { initial a; a -- ?x -> b; a -- #2!y -> c; }\nmachine #2 { initial o; }"
    response = await client.post("/api/v1/protocols/validate", json={"source": source})
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["valid"] is False
    assert data["machines"] == 2
    assert data["issues"][0]["code"] == "MixedState"
    assert data["issues"][0]["location"] == "1:25"


@pytest.mark.asyncio
async def test_validate_clean_protocol(client, example_source):
    """Test validating a clean protocol."""
    payload = {"source": example_source("mem4")}
    response = await client.post("/api/v1/protocols/validate", json=payload)
    data = response.json()["data"]
    assert data["valid"] is True
    assert data["issues"] == []


@pytest.mark.asyncio
async def test_validate_syntax_error(client):
    """Test that empty source is a syntax error."""
    response = await client.post("/api/v1/protocols/validate", json={"source": ""})
    assert response.status_code == 400
    body = response.json()
    assert body["success"] is False
    assert body["error"]["code"] == ErrorCode.SYNTAX_ERROR


@pytest.mark.asyncio
async def test_print(client, example_source):
    """Test pretty-printing over HTTP."""
    payload = {"source": example_source("pingpong")}
    response = await client.post("/api/v1/protocols/print", json=payload)
    assert response.status_code == 200
    assert response.json()["data"]["text"].startswith("machine #1 {\n    initial p0;\n")


@pytest.mark.asyncio
async def test_codegen_rejects_invalid_protocol(client):
    """Test that codegen refuses a protocol with errors."""
    source = "machine #1 { initial a; a -- ?{X, X} -> b; }"
    response = await client.post("/api/v1/protocols/codegen", json={"source": source})
    assert response.status_code == 422
    assert response.json()["error"]["code"] == ErrorCode.VALIDATION_ERROR


@pytest.mark.asyncio
async def test_codegen(client, example_source):
    """Test generating one module per machine."""
    payload = {"source": example_source("fork")}
    response = await client.post("/api/v1/protocols/codegen", json=payload)
    assert sorted(response.json()["data"]["modules"]) == ["caa_m0", "caa_m1", "caa_m2"]
