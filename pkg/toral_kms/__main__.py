"""Pipeline entry point for toral-kms."""

from typing import cast

from ai_pipeline_core import DocumentList, FlowOptions
from ai_pipeline_core.simple_runner import run_cli

from .documents.flow.field_spec_input import FieldSpecInputDocument, FieldSpecInputFiles
from .field_spec import load_field_spec
from .flow_options import ToralFlowOptions
from .flows import FLOW_CONFIGS, FLOWS


def initialize_project(options: FlowOptions) -> tuple[str, DocumentList]:
    """Load the field specification named by the options into the first input document."""
    toral_options = cast(ToralFlowOptions, options)

    spec = load_field_spec(toral_options.field_spec)

    spec_doc = FieldSpecInputDocument.create_as_json(
        name=FieldSpecInputFiles.FIELD_SPEC.value,
        description=f"Field specification from {toral_options.field_spec.name}",
        data=spec,
    )

    # The simple_runner uses the working directory name as project name
    return "", DocumentList([spec_doc])


def main():
    """Run the four flows of the pipeline."""
    run_cli(
        flows=FLOWS,
        flow_configs=FLOW_CONFIGS,
        options_cls=ToralFlowOptions,
        initializer=initialize_project,
        trace_name="toral-kms",
    )


if __name__ == "__main__":
    main()
