"""Patient CSV parsing, derived items, cohort filters, transaction building.

A CSV has a header row; the columns ``id``, ``age``, ``sex``, ``outcome``
and ``lab_result`` are reserved (case-sensitive), everything else is a
binary symptom column. Demographic/outcome items are injected as extra
transaction items so they can appear inside rules.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .core import ItemCatalog, Itemset, TransactionSet
from .errors import ConfigError, ParseError, SchemaError

RESERVED_COLUMNS = ("id", "age", "sex", "outcome", "lab_result")

AGE_BUCKETS = ("<20", "20-40", "40-60", ">60")
SEX_ITEMS = ("Male", "Female")
OUTCOME_ITEMS = ("Recovery", "Death")
LAB_ITEMS = ("Lab_Res_Pos", "Lab_Res_Neg")


@dataclass
class PatientRecord:
    age: int | None
    sex: str | None
    outcome: str | None
    lab_result: str | None
    symptoms: dict[str, int]


@dataclass
class PatientTable:
    symptom_columns: list[str]
    rows: list[PatientRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class DerivationConfig:
    age_buckets_enabled: bool = False
    include_sex: bool = False
    include_outcome: bool = False
    include_lab: bool = False

    def derived_names(self) -> list[str]:
        names: list[str] = []
        if self.age_buckets_enabled:
            names.extend(AGE_BUCKETS)
        if self.include_sex:
            names.extend(SEX_ITEMS)
        if self.include_outcome:
            names.extend(OUTCOME_ITEMS)
        if self.include_lab:
            names.extend(LAB_ITEMS)
        return names


@dataclass
class CohortSelector:
    kind: str  # all | deceased | recovered | age_range
    lo: int | None = None
    hi: int | None = None

    def __post_init__(self):
        if self.kind not in ("all", "deceased", "recovered", "age_range"):
            raise ConfigError(f"unknown cohort selector: {self.kind!r}")
        if self.kind == "age_range":
            if self.lo is None or self.hi is None or not self.lo < self.hi:
                raise ConfigError("age_range needs lo < hi")


def age_bucket(age: int) -> str:
    """Half-open buckets: [0,20), [20,40), [40,60), [60,inf)."""
    if age < 20:
        return "<20"
    if age < 40:
        return "20-40"
    if age < 60:
        return "40-60"
    return ">60"


def parse_patient_csv(text: str) -> PatientTable:
    """Parse a patient CSV into a PatientTable.

    Symptom cells must be exactly 0 or 1; anything else is a hard parse
    error (no imputation).
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty file: no header row") from None
    if len(header) != len(set(header)):
        dupes = sorted({c for c in header if header.count(c) > 1})
        raise SchemaError(f"duplicate header names: {', '.join(dupes)}")
    symptom_columns = [c for c in header if c not in RESERVED_COLUMNS]
    col_index = {c: k for k, c in enumerate(header)}

    rows: list[PatientRecord] = []
    for lineno, cells in enumerate(reader, start=2):
        if not cells:
            continue
        if len(cells) != len(header):
            raise ParseError(f"row {lineno}: expected {len(header)} cells, got {len(cells)}")

        def cell(name: str) -> str | None:
            k = col_index.get(name)
            return cells[k] if k is not None else None

        age: int | None = None
        raw = cell("age")
        if raw is not None and raw != "":
            try:
                age = int(raw)
            except ValueError:
                raise ParseError(f"row {lineno}, column age: not an integer: {raw!r}") from None
            if age < 0:
                raise ParseError(f"row {lineno}, column age: negative age {age}")

        sex = cell("sex")
        if sex == "":
            sex = None
        if sex is not None and sex not in ("M", "F"):
            raise ParseError(f"row {lineno}, column sex: expected M or F, got {sex!r}")

        outcome = cell("outcome")
        if outcome == "":
            outcome = None
        if outcome is not None and outcome not in ("recovered", "deceased"):
            raise ParseError(
                f"row {lineno}, column outcome: expected recovered or deceased, got {outcome!r}"
            )

        lab = cell("lab_result")
        if lab == "":
            lab = None
        if lab is not None and lab not in ("pos", "neg"):
            raise ParseError(f"row {lineno}, column lab_result: expected pos or neg, got {lab!r}")

        symptoms: dict[str, int] = {}
        for name in symptom_columns:
            v = cells[col_index[name]]
            if v not in ("0", "1"):
                raise ParseError(f"row {lineno}, column {name}: expected 0 or 1, got {v!r}")
            symptoms[name] = int(v)
        rows.append(PatientRecord(age, sex, outcome, lab, symptoms))

    return PatientTable(symptom_columns=symptom_columns, rows=rows)


def serialize_patient_csv(table: PatientTable) -> str:
    """Inverse of parse_patient_csv for the columns the table carries."""
    header: list[str] = []
    if any(r.age is not None for r in table.rows):
        header.append("age")
    if any(r.sex is not None for r in table.rows):
        header.append("sex")
    if any(r.outcome is not None for r in table.rows):
        header.append("outcome")
    if any(r.lab_result is not None for r in table.rows):
        header.append("lab_result")
    header.extend(table.symptom_columns)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for r in table.rows:
        cells: list[str] = []
        for col in header:
            if col == "age":
                cells.append("" if r.age is None else str(r.age))
            elif col == "sex":
                cells.append(r.sex or "")
            elif col == "outcome":
                cells.append(r.outcome or "")
            elif col == "lab_result":
                cells.append(r.lab_result or "")
            else:
                cells.append(str(r.symptoms[col]))
        writer.writerow(cells)
    return buf.getvalue()


def filter_cohort(table: PatientTable, sel: CohortSelector) -> PatientTable:
    """Row filter preserving order; ``all`` is the identity."""
    if sel.kind == "all":
        return PatientTable(list(table.symptom_columns), list(table.rows))

    def keep(r: PatientRecord) -> bool:
        if sel.kind in ("deceased", "recovered"):
            if r.outcome is None:
                raise SchemaError("cohort filter needs the outcome column")
            return r.outcome == ("deceased" if sel.kind == "deceased" else "recovered")
        if r.age is None:
            raise SchemaError("age_range cohort filter needs the age column")
        return sel.lo <= r.age < sel.hi  # type: ignore[operator]

    return PatientTable(list(table.symptom_columns), [r for r in table.rows if keep(r)])


def build_catalog(table: PatientTable, cfg: DerivationConfig) -> ItemCatalog:
    """Catalog with symptom columns in CSV order followed by derived items."""
    return ItemCatalog(table.symptom_columns + cfg.derived_names())


def derive_items(
    table: PatientTable, cfg: DerivationConfig, catalog: ItemCatalog
) -> TransactionSet:
    """One transaction per patient: flagged symptoms plus derived items.

    When enabled, each transaction gets exactly one age-bucket item, one
    sex item, one outcome item, and one lab item (the latter only for rows
    that carry a lab result).
    """
    transactions: list[list[int]] = []
    for k, r in enumerate(table.rows):
        items = [catalog.id_of(name) for name, v in r.symptoms.items() if v == 1]
        if cfg.age_buckets_enabled:
            if r.age is None:
                raise SchemaError(f"row {k + 1}: age derivation enabled but age missing")
            items.append(catalog.id_of(age_bucket(r.age)))
        if cfg.include_sex:
            if r.sex is None:
                raise SchemaError(f"row {k + 1}: sex derivation enabled but sex missing")
            items.append(catalog.id_of("Male" if r.sex == "M" else "Female"))
        if cfg.include_outcome:
            if r.outcome is None:
                raise SchemaError(f"row {k + 1}: outcome derivation enabled but outcome missing")
            items.append(catalog.id_of("Death" if r.outcome == "deceased" else "Recovery"))
        if cfg.include_lab and r.lab_result is not None:
            items.append(catalog.id_of("Lab_Res_Pos" if r.lab_result == "pos" else "Lab_Res_Neg"))
        transactions.append(items)
    return TransactionSet.from_transactions(transactions, item_ids=range(len(catalog)))


def drop_sparse_patients(
    ts: TransactionSet, clinical_items: Itemset, min_count: int = 2
) -> TransactionSet:
    """Keep transactions containing at least min_count clinical items.

    Derived demographic/outcome items never count toward the threshold;
    only ids listed in ``clinical_items`` do.
    """
    if min_count < 1:
        raise ConfigError(f"min_count must be >= 1, got {min_count}")
    clinical_covers = [ts.cover_bits(i) for i in clinical_items]
    kept = [
        t
        for t in range(ts.n_transactions)
        if sum((bits >> t) & 1 for bits in clinical_covers) >= min_count
    ]
    remap = {t: k for k, t in enumerate(kept)}
    covers = {}
    for i in ts.item_ids():
        bits = ts.cover_bits(i)
        new_bits = 0
        for t, k in remap.items():
            if (bits >> t) & 1:
                new_bits |= 1 << k
        covers[i] = new_bits
    return TransactionSet(len(kept), covers)
