#!/usr/bin/env python3
"""Generate a synthetic discharge-note corpus in the standard de-identified layout.

The notes are fake but structurally faithful: demographic line pairs,
the 14 input sections, and both target summaries embedded mid-note and
at the end. Used to build the test fixture and for pipeline demos.

    python3 scripts/make_synthetic_corpus.py --count 10 --seed 13 \
        --output tests/data/synthetic_notes.jsonl
"""

import argparse
import json
import random

SERVICES = ["SURGERY", "MEDICINE", "NEUROLOGY", "CARDIOTHORACIC", "ORTHOPAEDICS"]
COMPLAINTS = ["Abdominal pain", "Chest pain", "Shortness of breath",
              "Fever and chills", "Left leg swelling"]
ALLERGIES = ["No Known Allergies / Adverse Drug Reactions", "Penicillins",
             "Codeine / Levaquin", "Sulfa (Sulfonamide Antibiotics)"]
PROCEDURES = ["None", "Appendectomy", "Central line placement",
              "Exploratory laparotomy"]
DISPOSITIONS = ["Home", "Home With Service", "Extended Care Facility"]
DRUGS = ["Acetaminophen 1000 mg PO TID", "Ciprofloxacin HCl 500 mg PO Q12H",
         "Indomethacin 25 mg PO TID", "MetroNIDAZOLE 500 mg PO Q8H",
         "Aspirin 81 mg PO DAILY", "Atorvastatin 40 mg PO QPM"]
SENTENCES = [
    "The patient was admitted for further evaluation and management.",
    "Vital signs remained stable throughout the hospitalization.",
    "Pain was controlled with oral analgesics.",
    "The patient tolerated a regular diet without difficulty.",
    "Imaging showed interval improvement of the inflammatory process.",
    "The patient was encouraged to ambulate early and often.",
    "Antibiotic therapy was transitioned from IV to oral on discharge.",
    "Follow up with your primary care physician within one week.",
    "Call your doctor if you develop fever greater than 101.5 degrees.",
    "Please take all medications as prescribed.",
]


def paragraph(rng, n_sentences):
    return " ".join(rng.choice(SENTENCES) for _ in range(n_sentences))


def make_note(rng, idx):
    sex = rng.choice(["M", "F"])
    meds = rng.sample(DRUGS, k=3)
    labs = "\n".join(
        f"___ {rng.randint(1, 12):02d}:{rng.randint(0, 59):02d}AM BLOOD "
        f"WBC-{rng.randint(4, 12)}.{rng.randint(0, 9)} Hgb-{rng.randint(10, 16)}"
        for _ in range(3)
    )
    bhc = f"{paragraph(rng, 3)}\n\n{paragraph(rng, 2)}"
    di = f"Dear Mr. ___,\n\n{paragraph(rng, 2)}\n\n{paragraph(rng, 2)}"
    text = f"""\
Name:  ___                 Unit No:   ___

Admission Date:  ___              Discharge Date:   ___

Date of Birth:  ___             Sex:   {sex}

Service: {rng.choice(SERVICES)}

Allergies:
{rng.choice(ALLERGIES)}

Attending: ___.

Chief Complaint:
{rng.choice(COMPLAINTS)}

Major Surgical or Invasive Procedure:
{rng.choice(PROCEDURES)}

History of Present Illness:
Mr. ___ is a ___ with a history of ___ presenting with
{rng.choice(COMPLAINTS).lower()}. {paragraph(rng, 2)}

Past Medical History:
1. Hypertension
2. Hyperlipidemia

Social History:
___

Family History:
Non-contributory.

Physical Exam:
Gen: NAD, comfortable.

Pertinent Results:
{labs}

Brief Hospital Course:
{bhc}

Medications on Admission:
1.  {meds[0]}
2.  {meds[1]}

Discharge Medications:
1.  {meds[1]}
2.  {meds[2]}

Discharge Disposition:
{rng.choice(DISPOSITIONS)}

Discharge Diagnosis:
{rng.choice(COMPLAINTS)}

Discharge Condition:
Mental Status: Clear and coherent.
Level of Consciousness: Alert and interactive.
Activity Status: Ambulatory - Independent.

Discharge Instructions:
{di}

Followup Instructions:
___
"""
    return {"hadm_id": f"2{idx:07d}", "note_id": f"2{idx:07d}-DS-1", "text": text}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--seed", type=int, default=13)
    parser.add_argument("--output", required=True)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    with open(args.output, "w", encoding="utf-8") as f:
        for i in range(args.count):
            f.write(json.dumps(make_note(rng, i), ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
