"""An end-to-end HTTP session against the audit service.

Starts a mock classifier endpoint (the toy sentiment model behind the
standard /classify contract), materializes the toy resource files, boots the
audit service on a free port, and drives it the way the explorer UI does:
read the config, generate an alterfactual, run a targeted probe, compare two
models.

    python demos/05_service_session.py
"""

import json
import pathlib
import sys
import tempfile
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import requests

sys.path.insert(0, str(pathlib.Path(__file__).parent))

import toyworld
from alterfactual import ToyLinearClassifier
from alterfactual.service import AuditService, resolve_settings


def serve_classifier(model) -> ThreadingHTTPServer:
    class Handler(BaseHTTPRequestHandler):
        def do_POST(self):
            length = int(self.headers.get("Content-Length") or 0)
            body = json.loads(self.rfile.read(length))
            payload = json.dumps({"probs": model.predict_probs(body["texts"])}).encode()
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)

        def log_message(self, *args):
            pass

    server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
    threading.Thread(target=server.serve_forever, daemon=True).start()
    return server


def write_resources(dirpath: pathlib.Path) -> dict:
    (dirpath / "stopwords.txt").write_text("\n".join(sorted(toyworld.STOPWORDS)))
    (dirpath / "negation.txt").write_text("\n".join(sorted(toyworld.NEGATION_WORDS)))
    (dirpath / "pos.txt").write_text(
        "".join(f"{w} {t}\n" for w, t in sorted(toyworld.POS_TABLE.items()))
    )
    (dirpath / "opposites.txt").write_text(
        "".join(f"{w} {' '.join(o)}\n" for w, o in sorted(toyworld.OPPOSITES.items()))
    )
    (dirpath / "vectors.txt").write_text(
        "\n".join(
            w + " " + " ".join(repr(float(x)) for x in vec)
            for w, vec in sorted(toyworld.vectors().items())
        )
    )
    return {
        "stopwords.path": str(dirpath / "stopwords.txt"),
        "negation_lexicon.path": str(dirpath / "negation.txt"),
        "pos_lexicon.path": str(dirpath / "pos.txt"),
        "opposites_lexicon.path": str(dirpath / "opposites.txt"),
        "vectors.path": str(dirpath / "vectors.txt"),
    }


def show(title, payload):
    print(f"\n--- {title} ---")
    print(json.dumps(payload, indent=2)[:1200])


def main():
    fair = serve_classifier(toyworld.sentiment_classifier())
    biased_weights = dict(toyworld.SENTIMENT_WEIGHTS, she=4.0, he=-4.0)
    biased = serve_classifier(ToyLinearClassifier.binary(biased_weights))
    fair_url = "http://127.0.0.1:%d" % fair.server_address[1]
    biased_url = "http://127.0.0.1:%d" % biased.server_address[1]

    with tempfile.TemporaryDirectory() as tmp:
        paths = write_resources(pathlib.Path(tmp))
        settings = resolve_settings(None, {"classifier.url": fair_url, **paths})
        service = AuditService(settings).start()
        print(f"audit service listening on {service.url}")

        show("GET /api/config", requests.get(service.url + "/api/config").json())

        body = requests.post(
            service.url + "/api/generate",
            json={"text": "She watched the movie on monday evening and it was really good"},
        ).json()
        result = body["result"]
        show("POST /api/generate (summary)", {
            "queries": body["queries"],
            "success": result["success"],
            "altered": result["altered"]["raw"],
            "accepted": [
                f"{s['original']} -> {s['replacement']}" for s in result["accepted"]
            ],
            "rejected": [
                f"{t['substitution']['original']} -> "
                f"{t['substitution']['replacement']} ({t['reason']})"
                for t in result["rejected"]
            ],
        })

        body = requests.post(
            service.url + "/api/targeted",
            json={"text": "She enjoyed the film on sunday morning",
                  "targets": [["she", "he"], ["he", "she"]]},
        ).json()
        show("POST /api/targeted (summary)", {
            "queries": body["queries"],
            "strict_success": body["result"]["strict_success"],
            "altered": body["result"]["altered"]["raw"],
        })

        body = requests.post(
            service.url + "/api/probe",
            json={
                "models": [
                    {"id": "fair", "url": fair_url},
                    {"id": "biased", "url": biased_url},
                ],
                "texts": toyworld.REVIEWS,
                "targets": [["she", "he"], ["he", "she"]],
                "attribute": "genders",
            },
        ).json()
        show("POST /api/probe", body)

        service.stop()
    fair.shutdown()
    biased.shutdown()


if __name__ == "__main__":
    main()
