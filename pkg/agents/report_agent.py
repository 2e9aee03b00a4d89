"""
ReportAgent
===========
Agent 6: Load report templates, render and validate emitted documents.

Responsibility:
- Load report template definitions from JSON files
- Stamp each document with its report name and template version
- Validate rendered documents against the template's JSON schema
- Write documents to a file or standard output

Input: Command name + report body from the other agents
Output: Validated report document (JSON)
"""

import json
import math
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

from jsonschema import ValidationError, validate
from typing_extensions import TypedDict

sys.path.append(str(Path(__file__).parent.parent))
from config import REPORT_TEMPLATES, TEMPLATES_DIR
from logic_blocks.errors import InternalError

FLOAT_MARKER = "__float17__:"
FLOAT_TAG = re.compile(r'"' + FLOAT_MARKER + r'([^"]*)"')


def format_float(value: float) -> str:
    """value with 17 significant digits; integral values keep a trailing .0."""
    text = format(value, ".17g")
    if "." not in text and "e" not in text:
        text += ".0"
    return text


def _tag_floats(value: Any) -> Any:
    # json.dumps has no float formatting hook, so floats travel as tagged strings
    if isinstance(value, float) and math.isfinite(value):
        return FLOAT_MARKER + format_float(value)
    if isinstance(value, dict):
        return {key: _tag_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_tag_floats(item) for item in value]
    return value


class ReportTemplate(TypedDict):
    template_name: str
    version: str
    description: str
    command: str
    schema: Dict[str, Any]


class ReportAgent:
    """
    Agent responsible for the machine-readable output of every command.

    Templates are plain JSON files under templates/; a document that does
    not satisfy its template's schema is a bug in the pipeline, not an
    input error, so it surfaces as InternalError.
    """

    def __init__(self, templates_dir: Path = TEMPLATES_DIR):
        """Initialize the ReportAgent."""
        self.name = "ReportAgent"
        self.templates_dir = Path(templates_dir)
        self.templates: Dict[str, ReportTemplate] = {}

        self._load_templates()

    def _load_templates(self) -> None:
        """Load all report templates named in REPORT_TEMPLATES."""
        for command, filename in REPORT_TEMPLATES.items():
            filepath = self.templates_dir / filename
            with open(filepath, "r", encoding="utf-8") as f:
                self.templates[command] = json.load(f)

    def get_template(self, command: str) -> Optional[ReportTemplate]:
        return self.templates.get(command)

    def list_templates(self) -> List[str]:
        """Return list of commands that have a report template."""
        return list(self.templates.keys())

    def render(self, command: str, body: Dict[str, Any]) -> Dict[str, Any]:
        """
        Build the report document for a command.

        Args:
            command: CLI subcommand (check, complete, eigensteps, synthesize, verify)
            body: Report fields produced by the pipeline stages

        Returns:
            The document, with "report" and "version" first

        Raises:
            InternalError: If the document does not match the template schema
        """
        template = self.get_template(command)
        if template is None:
            raise InternalError(f"No report template for command: {command}")

        document = {"report": template["template_name"], "version": template["version"]}
        document.update(body)

        try:
            self.validate_document(command, document)
        except ValidationError as e:
            raise InternalError(f"{command} report does not match its template: {e.message}")
        return document

    def validate_document(self, command: str, document: Dict[str, Any]) -> None:
        """
        Check a document against the template for command.

        Raises:
            jsonschema.ValidationError: If the document does not match
        """
        validate(instance=document, schema=self.templates[command]["schema"])

    def dumps(self, document: Dict[str, Any]) -> str:
        """JSON text with every finite float written to 17 significant digits."""
        text = json.dumps(_tag_floats(document), indent=2, ensure_ascii=False)
        return FLOAT_TAG.sub(lambda match: match.group(1), text)

    def write(self, document: Dict[str, Any], output: Optional[Path] = None, stream: TextIO = None) -> None:
        """Write the document to output, or to stream (stdout) when no path is given."""
        text = self.dumps(document) + "\n"
        if output is not None:
            Path(output).parent.mkdir(parents=True, exist_ok=True)
            with open(output, "w", encoding="utf-8") as f:
                f.write(text)
            return
        (stream or sys.stdout).write(text)

    def __repr__(self) -> str:
        return f"<{self.name} templates={self.list_templates()}>"


# =============================================================================
# STANDALONE EXECUTION (for testing)
# =============================================================================

if __name__ == "__main__":
    agent = ReportAgent()

    print("ReportAgent Test")
    print("=" * 50)
    print(f"\nAvailable templates: {agent.list_templates()}")

    document = agent.render("check", {
        "problem": {"alpha": ["1", "1"], "mu": []},
        "lambda": ["1", "1"],
        "feasibility": {
            "feasible": True,
            "equality_gap": "0",
            "violated_indices": [],
            "dominance_ok": True,
        },
    })
    print(agent.dumps(document))
