"""Flow verifying the field specification and describing the field."""

from ai_pipeline_core import DocumentList, FlowConfig, get_pipeline_logger, pipeline_flow

from toral_kms.documents.flow.field_report import FieldReportDocument
from toral_kms.documents.flow.field_spec_input import FieldSpecData, FieldSpecInputDocument
from toral_kms.flow_options import ToralFlowOptions
from toral_kms.tasks.describe_field import describe_field_task

logger = get_pipeline_logger(__name__)


class DescribeFieldConfig(FlowConfig):
    """Configuration for describe field flow."""

    INPUT_DOCUMENT_TYPES = [FieldSpecInputDocument]
    OUTPUT_DOCUMENT_TYPE = FieldReportDocument


@pipeline_flow
async def describe_field(
    project_name: str, documents: DocumentList, flow_options: ToralFlowOptions
) -> DocumentList:
    """Build the field, verify its units and ideals, and report the invariants.

    Args:
        project_name: Name of the run
        documents: Input documents containing the field specification
        flow_options: Flow configuration

    Returns:
        DocumentList containing the field report
    """
    logger.info(f"Starting field description for: {project_name}")

    input_docs = DescribeFieldConfig.get_input_documents(documents)

    spec_docs = input_docs.filter_by_type(FieldSpecInputDocument)
    if not spec_docs:
        raise ValueError("FieldSpecInputDocument not found in input documents")
    spec = spec_docs[0].as_pydantic_model(FieldSpecData)

    report_doc = await describe_field_task(spec=spec, flow_options=flow_options)

    output_docs = DocumentList([report_doc])
    DescribeFieldConfig.validate_output_documents(output_docs)

    logger.info(f"Successfully described field: {report_doc.name}")
    return output_docs
