"""Sandboxed one-shot code executor.

Reads a single JSON object on stdin:

    {"source": str, "entry_point": str, "input": <JSON value>}

and replies on stdout with

    {"ok": bool, "output": <JSON value>, "error": str?}

exiting 0 whenever the protocol itself succeeded (the submitted code
failing is reported in-band with ok=false).

A batch variant amortizes interpreter startup: pass "inputs": [v, ...]
instead of "input" and the reply is {"ok": true, "outputs": [<single-shot
reply>, ...]} in input order.

Entry points taking k > 1 positional arguments receive the input value as
an argument list of length k; single-argument entry points receive it as
is.
"""

import inspect
import json
import sys


def _limit_resources():
    try:
        import resource

        resource.setrlimit(resource.RLIMIT_CPU, (30, 30))
        resource.setrlimit(resource.RLIMIT_AS, (2 << 30, 2 << 30))
    except Exception:
        pass


def _arity(fn):
    try:
        params = [
            p
            for p in inspect.signature(fn).parameters.values()
            if p.kind in (p.POSITIONAL_ONLY, p.POSITIONAL_OR_KEYWORD)
            and p.default is p.empty
        ]
        return len(params)
    except (TypeError, ValueError):
        return 1


def _failure(message):
    return {"ok": False, "output": None, "error": message}


def _run_one(fn, value):
    try:
        if _arity(fn) <= 1:
            out = fn(value)
        else:
            if not isinstance(value, list):
                return _failure("multi-argument entry point requires a list input")
            out = fn(*value)
    except Exception as exc:  # noqa: BLE001 - submitted code may raise anything
        return _failure(f"{type(exc).__name__}: {exc}")
    try:
        json.dumps(out)
    except (TypeError, ValueError):
        return _failure(f"output of type {type(out).__name__} is not JSON-serializable")
    return {"ok": True, "output": out}


def main():
    _limit_resources()
    try:
        request = json.load(sys.stdin)
        source = request["source"]
        entry = request["entry_point"]
        batch = "inputs" in request
        values = request["inputs"] if batch else [request["input"]]
    except (KeyError, ValueError) as exc:
        print(f"protocol error: {exc}", file=sys.stderr)
        return 1

    namespace = {}
    compile_error = None
    try:
        exec(compile(source, "<submission>", "exec"), namespace)  # noqa: S102
    except Exception as exc:  # noqa: BLE001
        compile_error = f"{type(exc).__name__}: {exc}"

    fn = namespace.get(entry)
    if compile_error is not None:
        results = [_failure(compile_error) for _ in values]
    elif not callable(fn):
        results = [_failure(f"entry point '{entry}' not found") for _ in values]
    else:
        results = [_run_one(fn, v) for v in values]

    if batch:
        reply = {"ok": True, "outputs": results}
    else:
        reply = results[0]
    json.dump(reply, sys.stdout)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
