"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

RESULTS = {}


def record(key, ok, detail):
    RESULTS[key] = (ok, detail)
    line = f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    return line


def lines():
    def order(k):
        num = "".join(ch for ch in k if ch.isdigit())
        return (int(num), k)
    return [f"criterion {k}: {'PASS' if ok else 'FAIL'} - {d}"
            for k, (ok, d) in sorted(RESULTS.items(), key=lambda kv: order(kv[0]))]
