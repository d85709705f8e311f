from typing import Any
import dataclasses
import json

from src.scalar import format_scalar, is_scalar_like


def to_jsonable(value: Any) -> Any:
    """리포트 값(스칼라, 유리수, 튜플, dataclass ...)을 항상 JSON 친화적으로 변환."""
    if value is None or isinstance(value, (bool, int, str)):
        return value

    if isinstance(value, float):
        return value

    if isinstance(value, dict):
        return {_key_to_str(k): to_jsonable(v) for k, v in value.items()}

    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]

    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)

    # 직렬화 메서드가 있으면 그걸 쓴다 (LaurentChar, Subspace 요약 등)
    if hasattr(value, "to_json"):
        return to_jsonable(value.to_json())

    # dataclass면 필드 단위로 다시 태워서 처리
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}

    # Scalar(FracElement)와 QQ 원소
    if is_scalar_like(value):
        return format_scalar(value)

    # 나머지는 일단 문자열 캐스팅
    return str(value)


def _key_to_str(key: Any) -> str:
    if isinstance(key, str):
        return key
    if isinstance(key, tuple):
        return ",".join(str(k) for k in key)
    return str(key)


def dump_report(report: Any) -> str:
    """같은 입력이면 바이트 단위로 같은 문자열이 나오도록 정렬해서 덤프."""
    return json.dumps(to_jsonable(report), ensure_ascii=False, indent=2, sort_keys=True)
