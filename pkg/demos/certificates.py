# Write a certificate, reload it, and watch a tampered copy get rejected.
import json
import tempfile
from pathlib import Path

from fullmdim import Certificate, Construction, emit_certificate, load_certificate
from fullmdim.errors import CertificateInvariantError
from fullmdim.suites import run_suites

ctx = Construction("paper", 2)
results = run_suites(ctx, suites=("schedule", "density"))
cert = Certificate.from_construction(ctx, results)

with tempfile.TemporaryDirectory() as tmp:
    path = emit_certificate(Path(tmp) / "certificate.json", cert)
    print(path.read_text()[:400], "...")
    assert load_certificate(path) == cert

    data = json.loads(path.read_text())
    data["schedule"]["r"]["1"] = "1245183"
    path.write_text(json.dumps(data))
    try:
        load_certificate(path)
    except CertificateInvariantError as exc:
        print("rejected:", exc)
