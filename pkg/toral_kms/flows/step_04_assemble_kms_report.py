"""Flow assembling the extremal KMS catalog from the verdict and the orbits."""

from ai_pipeline_core import DocumentList, FlowConfig, get_pipeline_logger, pipeline_flow

from toral_kms.documents.flow.berend_certificate import (
    BerendCertificateData,
    BerendCertificateDocument,
)
from toral_kms.documents.flow.field_spec_input import FieldSpecData, FieldSpecInputDocument
from toral_kms.documents.flow.kms_report import KmsReportDocument
from toral_kms.documents.flow.orbit_catalog import OrbitCatalogData, OrbitCatalogDocument
from toral_kms.flow_options import ToralFlowOptions
from toral_kms.tasks.assemble_kms_report import assemble_kms_report_task

logger = get_pipeline_logger(__name__)


class AssembleKmsReportConfig(FlowConfig):
    """Configuration for assemble KMS report flow."""

    INPUT_DOCUMENT_TYPES = [FieldSpecInputDocument, BerendCertificateDocument, OrbitCatalogDocument]
    OUTPUT_DOCUMENT_TYPE = KmsReportDocument


@pipeline_flow
async def assemble_kms_report(
    project_name: str, documents: DocumentList, flow_options: ToralFlowOptions
) -> DocumentList:
    """Assemble the extremal KMS_β parameters, trace samples and Prim strata.

    Args:
        project_name: Name of the run
        documents: Input documents containing the field specification, the Berend certificate
            and the orbit catalog
        flow_options: Flow configuration

    Returns:
        DocumentList containing the KMS report
    """
    logger.info(f"Starting KMS report at β = {flow_options.beta} for: {project_name}")

    input_docs = AssembleKmsReportConfig.get_input_documents(documents)

    spec_docs = input_docs.filter_by_type(FieldSpecInputDocument)
    if not spec_docs:
        raise ValueError("FieldSpecInputDocument not found in input documents")
    spec = spec_docs[0].as_pydantic_model(FieldSpecData)

    certificate_docs = input_docs.filter_by_type(BerendCertificateDocument)
    if not certificate_docs:
        raise ValueError("BerendCertificateDocument not found in input documents")
    certificate = certificate_docs[0].as_pydantic_model(BerendCertificateData)

    catalog_docs = input_docs.filter_by_type(OrbitCatalogDocument)
    if not catalog_docs:
        raise ValueError("OrbitCatalogDocument not found in input documents")
    orbit_catalog = catalog_docs[0].as_pydantic_model(OrbitCatalogData)

    report_doc = await assemble_kms_report_task(
        spec=spec,
        certificate=certificate,
        orbit_catalog=orbit_catalog,
        flow_options=flow_options,
    )

    output_docs = DocumentList([report_doc])
    AssembleKmsReportConfig.validate_output_documents(output_docs)

    logger.info(f"Successfully assembled KMS report: {report_doc.name}")
    return output_docs
