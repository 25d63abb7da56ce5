"""OpenAPI 3.1 document generation from the registered tool schemas."""

from __future__ import annotations

from .. import __version__

ERROR_ENVELOPE_SCHEMA = {
    "type": "object",
    "properties": {
        "code": {"type": "string"},
        "message": {"type": "string"},
        "hint": {"type": "string"},
    },
    "required": ["code", "message", "hint"],
    "additionalProperties": False,
}

AGENT_CHAT_SCHEMA = {
    "type": "object",
    "properties": {
        "query": {"type": "string", "description": "natural-language request"},
        "model": {"type": "string", "description": "optional model override"},
        "temperature": {"type": "number", "description": "sampling temperature, default 0"},
        "stream": {"type": "boolean", "description": "emit an event stream instead of JSON"},
    },
    "required": ["query"],
    "additionalProperties": False,
}


def job_submit_schema(endpoints: list[str]) -> dict:
    return {
        "type": "object",
        "properties": {
            "endpoint": {"type": "string", "enum": endpoints},
            "body": {"type": "object"},
        },
        "required": ["endpoint", "body"],
        "additionalProperties": False,
    }


def _error_responses() -> dict:
    content = {"application/json": {"schema": {"$ref": "#/components/schemas/ErrorEnvelope"}}}
    return {
        "401": {"description": "missing or invalid API key", "content": content},
        "429": {"description": "rate limited; Retry-After header set", "content": content},
        "400": {"description": "request schema violation", "content": content},
        "422": {"description": "unphysical or unusable input", "content": content},
        "404": {"description": "unknown resource", "content": content},
        "500": {"description": "internal failure", "content": content},
    }


def build_openapi(route_specs: list, job_endpoints: list[str]) -> dict:
    """Assemble the document from the gateway's route table."""
    paths: dict = {
        "/health": {
            "get": {
                "summary": "Liveness probe",
                "security": [],
                "responses": {
                    "200": {
                        "description": "service is up",
                        "content": {
                            "application/json": {
                                "schema": {
                                    "type": "object",
                                    "properties": {
                                        "status": {"type": "string"},
                                        "version": {"type": "string"},
                                    },
                                    "required": ["status", "version"],
                                }
                            }
                        },
                    }
                },
            }
        },
        "/openapi.json": {
            "get": {
                "summary": "This document",
                "security": [],
                "responses": {"200": {"description": "OpenAPI 3.1 document"}},
            }
        },
    }

    for spec in route_specs:
        paths[spec.path] = {
            "post": {
                "summary": spec.summary,
                "description": spec.description,
                "parameters": [
                    {
                        "name": "mode",
                        "in": "query",
                        "required": False,
                        "schema": {"type": "string", "enum": ["sync", "async"]},
                        "description": "async submits a job and returns its id",
                    }
                ],
                "requestBody": {
                    "required": True,
                    "content": {"application/json": {"schema": spec.request_schema}},
                },
                "responses": {
                    "200": {
                        "description": "tool result",
                        "content": {"application/json": {"schema": spec.result_schema}},
                    },
                    "202": {
                        "description": "job accepted (mode=async)",
                        "content": {
                            "application/json": {
                                "schema": {
                                    "type": "object",
                                    "properties": {"job_id": {"type": "string"}},
                                    "required": ["job_id"],
                                }
                            }
                        },
                    },
                    **_error_responses(),
                },
            }
        }

    paths["/agent/chat"] = {
        "post": {
            "summary": "Run the agent pipeline on a natural-language query",
            "requestBody": {
                "required": True,
                "content": {"application/json": {"schema": AGENT_CHAT_SCHEMA}},
            },
            "responses": {
                "200": {"description": "AgentResponse JSON, or an event stream of plan/step/token/final frames"},
                **_error_responses(),
            },
        }
    }
    paths["/jobs"] = {
        "post": {
            "summary": "Submit an async job for a pure endpoint",
            "requestBody": {
                "required": True,
                "content": {"application/json": {"schema": job_submit_schema(job_endpoints)}},
            },
            "responses": {
                "202": {"description": "job accepted"},
                **_error_responses(),
            },
        }
    }
    paths["/jobs/{job_id}"] = {
        "get": {
            "summary": "Poll a job record",
            "parameters": [
                {
                    "name": "job_id",
                    "in": "path",
                    "required": True,
                    "schema": {"type": "string"},
                }
            ],
            "responses": {"200": {"description": "job record"}, **_error_responses()},
        }
    }

    return {
        "openapi": "3.1.0",
        "info": {
            "title": "matagent gateway",
            "version": __version__,
            "description": "REST access to desk-scale materials tools and the agent pipeline",
        },
        "components": {
            "schemas": {"ErrorEnvelope": ERROR_ENVELOPE_SCHEMA},
            "securitySchemes": {
                "bearerKey": {"type": "http", "scheme": "bearer", "description": "opaque API key"}
            },
        },
        "security": [{"bearerKey": []}],
        "paths": paths,
    }
