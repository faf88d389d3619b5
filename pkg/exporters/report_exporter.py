import sys
from pathlib import Path
from typing import Any, Dict, TextIO

from exporters.formats import REPORT_SCHEMA, ExportConfig, FormatConverter, ReportFormat


class ReportExporter:
    """Emite reportes en texto o JSON por stdout y, si se pide, a un archivo"""

    def __init__(self, config: ExportConfig, stream: TextIO = None):
        self.config = config
        self.stream = stream

    def render(self, report: Dict[str, Any], text: str) -> str:
        if self.config.format_type == ReportFormat.JSON:
            payload = {"schema": REPORT_SCHEMA}
            payload.update(report)
            return FormatConverter.to_json(payload, self.config)
        return text.rstrip("\n")

    def export(self, report: Dict[str, Any], text: str) -> str:
        """Escribe el reporte y devuelve el contenido emitido"""
        content = self.render(report, text)
        stream = self.stream if self.stream is not None else sys.stdout
        print(content, file=stream)
        if self.config.output_path:
            path = Path(self.config.output_path)
            with open(path, "w", encoding="utf-8") as f:
                f.write(content + "\n")
        return content
