"""Versioned prompt text assets with `{placeholder}` slots.

Templates are filled by literal replacement (not str.format), so template
bodies may freely contain braces, e.g. JSON examples.
"""

from __future__ import annotations

from importlib import resources

_PLACEHOLDERS = ("query", "context", "grid_labels")


def load_template(name: str) -> str:
    return resources.files("navai.prompts").joinpath(f"{name}.txt").read_text()


def fill(template: str, **values: str) -> str:
    for key in _PLACEHOLDERS:
        if key in values:
            template = template.replace("{" + key + "}", values[key])
    return template


def render_prompt(name: str, **values: str) -> str:
    return fill(load_template(name), **values)
