"""Flow deciding whether the toral action is ID."""

from ai_pipeline_core import DocumentList, FlowConfig, get_pipeline_logger, pipeline_flow

from toral_kms.documents.flow.berend_certificate import BerendCertificateDocument
from toral_kms.documents.flow.field_spec_input import FieldSpecData, FieldSpecInputDocument
from toral_kms.flow_options import ToralFlowOptions
from toral_kms.tasks.certify_berend import certify_berend_task

logger = get_pipeline_logger(__name__)


class CertifyBerendConfig(FlowConfig):
    """Configuration for certify Berend flow."""

    INPUT_DOCUMENT_TYPES = [FieldSpecInputDocument]
    OUTPUT_DOCUMENT_TYPE = BerendCertificateDocument


@pipeline_flow
async def certify_berend(
    project_name: str, documents: DocumentList, flow_options: ToralFlowOptions
) -> DocumentList:
    """Certify or refute ID for the unit group acting on every labelled ideal.

    Args:
        project_name: Name of the run
        documents: Input documents containing the field specification
        flow_options: Flow configuration

    Returns:
        DocumentList containing the Berend certificate
    """
    logger.info(f"Starting ID certification for: {project_name}")

    input_docs = CertifyBerendConfig.get_input_documents(documents)

    spec_docs = input_docs.filter_by_type(FieldSpecInputDocument)
    if not spec_docs:
        raise ValueError("FieldSpecInputDocument not found in input documents")
    spec = spec_docs[0].as_pydantic_model(FieldSpecData)

    certificate_doc = await certify_berend_task(spec=spec, flow_options=flow_options)

    output_docs = DocumentList([certificate_doc])
    CertifyBerendConfig.validate_output_documents(output_docs)

    logger.info(f"Successfully certified: {certificate_doc.name}")
    return output_docs
