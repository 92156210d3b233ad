import json
from pathlib import Path


def load_json(json_path) -> dict:
    json_path = Path(json_path)
    if not json_path.exists():
        return {}
    try:
        with open(json_path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError):
        return {}
    return data if isinstance(data, dict) else {}


def write_result_json(algo_name: str, json_path, entry: dict) -> None:
    """Store entry under algo_name, keeping the other algorithms already in the file."""
    json_path = Path(json_path)
    json_path.parent.mkdir(parents=True, exist_ok=True)

    data = load_json(json_path)
    data[algo_name] = entry

    with open(json_path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)


def write_json_lines(json_path, entries) -> int:
    json_path = Path(json_path)
    json_path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(json_path, "w", encoding="utf-8") as f:
        for entry in entries:
            f.write(json.dumps(entry, sort_keys=True) + "\n")
            count += 1
    return count


def read_json_lines(json_path) -> list:
    with open(json_path, "r", encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]
