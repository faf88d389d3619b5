import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from core.combinations import Combo, LinearCombination, TensorCombo
from core.words import CyclicWord

REPORT_SCHEMA = 1
TENSOR_SEPARATOR = " ⊗ "


class ReportFormat(Enum):
    """Formatos de salida de los reportes"""
    TEXT = "text"
    JSON = "json"


@dataclass
class ExportConfig:
    """Configuración para la exportación de reportes"""
    format_type: ReportFormat = ReportFormat.TEXT
    output_path: Optional[str] = None
    indent: int = 2


class FormatConverter:
    """Conversión de combinaciones y reportes a texto y a registros JSON"""

    @staticmethod
    def coefficient_text(coeff: Fraction) -> str:
        """``+1``, ``-2``, ``+1/2``"""
        coeff = Fraction(coeff)
        sign = "-" if coeff < 0 else "+"
        return f"{sign}{abs(coeff)}"

    @staticmethod
    def coefficient_json(coeff: Fraction) -> str:
        """Racional exacto como texto ``p`` o ``p/q``"""
        return str(Fraction(coeff))

    @staticmethod
    def key_text(key) -> str:
        if isinstance(key, CyclicWord):
            return str(key)
        return TENSOR_SEPARATOR.join(str(word) for word in key)

    @staticmethod
    def combo_lines(combo: LinearCombination) -> List[str]:
        """Un término por línea en orden canónico; la combinación nula es ``0``"""
        if combo.is_zero:
            return ["0"]
        return [f"{FormatConverter.coefficient_text(c)} {FormatConverter.key_text(k)}"
                for k, c in combo.items()]

    @staticmethod
    def combo_text(combo: LinearCombination) -> str:
        return "\n".join(FormatConverter.combo_lines(combo))

    @staticmethod
    def combo_inline(combo: LinearCombination) -> str:
        return " ".join(FormatConverter.combo_lines(combo))

    @staticmethod
    def combo_records(combo: LinearCombination) -> List[Dict[str, Any]]:
        records = []
        for key, coeff in combo.items():
            if isinstance(combo, TensorCombo):
                records.append({"words": [str(w) for w in key],
                                "coeff": FormatConverter.coefficient_json(coeff)})
            else:
                records.append({"word": str(key), "coeff": FormatConverter.coefficient_json(coeff)})
        return records

    @staticmethod
    def to_jsonable(value: Any) -> Any:
        """Convierte recursivamente palabras, combinaciones y racionales"""
        if isinstance(value, (Combo, TensorCombo)):
            return FormatConverter.combo_records(value)
        if isinstance(value, CyclicWord):
            return str(value)
        if isinstance(value, Fraction):
            return FormatConverter.coefficient_json(value)
        if isinstance(value, Enum):
            return value.value
        if isinstance(value, dict):
            return {str(k): FormatConverter.to_jsonable(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [FormatConverter.to_jsonable(v) for v in value]
        return value

    @staticmethod
    def to_json(report: Dict[str, Any], config: ExportConfig = None) -> str:
        """JSON con claves ordenadas y separadores fijos (salida byte a byte estable)"""
        indent = config.indent if config else 2
        payload = dict(FormatConverter.to_jsonable(report))
        payload.setdefault("schema", REPORT_SCHEMA)
        return json.dumps(payload, sort_keys=True, indent=indent,
                          separators=(",", ": "), ensure_ascii=False)
