"""Machine-readable emission: CSV and JSON with one fixed scalar encoding.

Records are flat string-keyed mappings.  The encoding, chosen so golden
files diff cleanly across languages:

  * integers stay integers (JSON numbers, bare CSV fields);
  * reals become decimal strings with 15 significant digits;
  * complex values are split into two real fields `<key>_re`, `<key>_im`
    before emission (records stay flat);
  * integer tuples (matrices row-major, triples) become JSON arrays of
    integers, and semicolon-joined strings in CSV.

Parsing inverts the encoding by shape: JSON arrays become integer
tuples, and strings that read as decimal numbers become floats.  CSV
fields are sniffed the same way, integers first.  Emitted reals
round-trip to within one unit in the 15th significant digit; integers
round-trip exactly.
"""

import csv
import io
import json

# ============================================================
# scalars
# ============================================================


def real_str(x):
    """Decimal string with 15 significant digits."""
    return format(float(x), ".15g")


_INT_CHARS = set("+-0123456789")


def parse_scalar(text):
    """Invert the CSV field encoding: int, float, int tuple, or str."""
    if text and set(text) <= _INT_CHARS:
        try:
            return int(text)
        except ValueError:
            pass
    if ";" in text:
        parts = text.split(";")
        if all(p and set(p) <= _INT_CHARS for p in parts):
            try:
                return tuple(int(p) for p in parts)
            except ValueError:
                pass
    try:
        return float(text)
    except ValueError:
        return text


# ============================================================
# records
# ============================================================


def flatten_record(record):
    """Apply the scalar encoding to one mapping (complex split here;
    reals stay floats so each back end can finish the job)."""
    out = {}
    for key, value in record.items():
        if isinstance(value, complex):
            out[key + "_re"] = float(value.real)
            out[key + "_im"] = float(value.imag)
        elif isinstance(value, bool):
            out[key] = int(value)
        elif isinstance(value, (tuple, list)):
            out[key] = tuple(int(v) for v in value)
        else:
            out[key] = value
    return out


def records_to_json(records):
    """Emit records as a JSON array of flat objects."""

    def encode(value):
        if isinstance(value, tuple):
            return list(value)
        if isinstance(value, float):
            return real_str(value)
        return value

    rows = []
    for record in records:
        flat = flatten_record(record)
        rows.append({key: encode(value) for key, value in flat.items()})
    return json.dumps(rows, indent=2)


def json_to_records(text):
    """Invert records_to_json."""
    rows = json.loads(text)
    out = []
    for row in rows:
        rec = {}
        for key, value in row.items():
            if isinstance(value, list):
                rec[key] = tuple(int(v) for v in value)
            elif isinstance(value, str):
                rec[key] = parse_scalar(value)
            else:
                rec[key] = value
        out.append(rec)
    return out


def records_to_csv(records):
    """Emit records as CSV with a header row; field order comes from the
    first record."""
    records = list(records)
    if not records:
        return ""
    flats = [flatten_record(r) for r in records]
    fieldnames = list(flats[0].keys())
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for flat in flats:
        row = {}
        for key, value in flat.items():
            if isinstance(value, float):
                row[key] = real_str(value)
            elif isinstance(value, tuple):
                row[key] = ";".join(str(int(v)) for v in value)
            else:
                row[key] = value
        writer.writerow(row)
    return buf.getvalue()


def csv_to_records(text):
    """Invert records_to_csv."""
    reader = csv.DictReader(io.StringIO(text))
    return [
        {key: parse_scalar(value) for key, value in row.items()} for row in reader
    ]
