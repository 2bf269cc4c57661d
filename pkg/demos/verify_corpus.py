"""Run the identity suite on a small corpus and print any failures."""

from fxi.verify import all_passed, default_corpus, run_corpus

# a small budget keeps this quick; the default budget is what the tests use
results = run_corpus(default_corpus(budget=2**12))
print(len(results), "checks, all passed:", all_passed(results))
for r in results:
    if not r.passed or r.skipped:
        print(r)
