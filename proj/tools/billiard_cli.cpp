// Command-line driver; subcommands are implemented after the library
// modules are in place.
int main() { return 0; }
