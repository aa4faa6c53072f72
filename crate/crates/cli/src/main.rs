use std::io::{IsTerminal, Write};

use qext_cli::{run_command, OutputMode};

fn colorize(text: &str) -> String {
    text.lines()
        .map(|line| {
            if let Some(rest) = line.strip_prefix("PASS") {
                format!("\x1b[32mPASS\x1b[0m{rest}")
            } else if let Some(rest) = line.strip_prefix("FAIL") {
                format!("\x1b[31mFAIL\x1b[0m{rest}")
            } else {
                line.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let result = run_command(&argv);
    let color = result.mode == OutputMode::Text
        && std::io::stdout().is_terminal()
        && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
    let out = if color { colorize(&result.output) } else { result.output };
    if result.exit_code == 2 {
        let _ = std::io::stderr().write_all(out.as_bytes());
    } else {
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    std::process::exit(result.exit_code);
}
