"""Flow enumerating finite orbits and their isotropy groups."""

from ai_pipeline_core import DocumentList, FlowConfig, get_pipeline_logger, pipeline_flow

from toral_kms.documents.flow.field_spec_input import FieldSpecData, FieldSpecInputDocument
from toral_kms.documents.flow.orbit_catalog import OrbitCatalogDocument
from toral_kms.flow_options import ToralFlowOptions
from toral_kms.tasks.enumerate_orbits import enumerate_orbits_task

logger = get_pipeline_logger(__name__)


class EnumerateOrbitsConfig(FlowConfig):
    """Configuration for enumerate orbits flow."""

    INPUT_DOCUMENT_TYPES = [FieldSpecInputDocument]
    OUTPUT_DOCUMENT_TYPE = OrbitCatalogDocument


@pipeline_flow
async def enumerate_orbits(
    project_name: str, documents: DocumentList, flow_options: ToralFlowOptions
) -> DocumentList:
    """Partition rational points with denominator ≤ qmax into orbits.

    Args:
        project_name: Name of the run
        documents: Input documents containing the field specification
        flow_options: Flow configuration

    Returns:
        DocumentList containing the orbit catalog
    """
    logger.info(f"Starting orbit enumeration up to q = {flow_options.qmax} for: {project_name}")

    input_docs = EnumerateOrbitsConfig.get_input_documents(documents)

    spec_docs = input_docs.filter_by_type(FieldSpecInputDocument)
    if not spec_docs:
        raise ValueError("FieldSpecInputDocument not found in input documents")
    spec = spec_docs[0].as_pydantic_model(FieldSpecData)

    catalog_doc = await enumerate_orbits_task(spec=spec, flow_options=flow_options)

    output_docs = DocumentList([catalog_doc])
    EnumerateOrbitsConfig.validate_output_documents(output_docs)

    logger.info(f"Successfully enumerated orbits: {catalog_doc.name}")
    return output_docs
