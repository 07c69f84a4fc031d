import csv
import io
import json
import sys
from typing import List, Optional

from duality_lab.common.errors import ConfigError
from duality_lab.common.logger import Logger
from duality_lab.run_config import OutputFormat
from duality_lab.verification_report import REPORT_FIELDS, VerificationReport

logger = Logger("report_writer")


def render_reports(reports: List[VerificationReport], output_format: OutputFormat = OutputFormat.Json) -> str:
    """One record per check, every record carrying the same fields"""
    records = [report.record() for report in reports]
    if OutputFormat(output_format) == OutputFormat.Json:
        return json.dumps(records, indent=2, allow_nan=False) + "\n"
    stream = io.StringIO()
    writer = csv.DictWriter(stream, fieldnames=list(REPORT_FIELDS), lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow({name: "" if record[name] is None else record[name] for name in REPORT_FIELDS})
    return stream.getvalue()


def write_reports(reports: List[VerificationReport],
                  output_format: OutputFormat = OutputFormat.Json,
                  output: Optional[str] = None) -> None:
    content = render_reports(reports, output_format)
    if output is None:
        sys.stdout.write(content)
        sys.stdout.flush()
        return
    try:
        with open(output, 'w') as stream:
            stream.write(content)
    except OSError as e:
        raise ConfigError(f"Could not write reports [path: {output}, error: {e}]")
    logger.info(f"Reports written [path: {output}, records: {len(reports)}, format: {OutputFormat(output_format).value}]")
