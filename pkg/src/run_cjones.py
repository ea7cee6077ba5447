import sys
from dotenv import load_dotenv, find_dotenv
from cjones.cli import run

load_dotenv(find_dotenv())


def main():
    try:
        code = run(sys.argv[1:])
    except KeyboardInterrupt:
        # Clean exit when a long sweep is interrupted
        print("interrupted", file=sys.stderr)
        code = 130
    sys.exit(code)

if __name__ == "__main__":
    main()
