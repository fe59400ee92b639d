from taukernel.cli import app

app(prog_name="taukernel")
