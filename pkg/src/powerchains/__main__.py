from powerchains.cli import entry

entry()
