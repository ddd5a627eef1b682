from hyperdyn.harness.cli import run

run()
