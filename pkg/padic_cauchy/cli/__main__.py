from padic_cauchy.cli.runner import main

if __name__ == "__main__":
    main()
