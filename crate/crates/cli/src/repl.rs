//! Line-oriented front end over a [`Session`]. Each line runs one command
//! with the same output as the matching one-shot invocation.

use std::io::{BufRead, IsTerminal, Write};
use std::path::PathBuf;

use crate::session::{CliError, Session};

const HELP: &str = "commands:
  load [FILE...]
  validate
  query FILE-or-TEXT [--json]
  explain FACT
  export [--facts FILE] [--report FILE]
  help
  quit
";

pub fn run(session: &mut Session, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let prompt = std::io::stdin().is_terminal();
    let mut line = String::new();
    loop {
        if prompt {
            let _ = write!(out, "modeus> ");
            let _ = out.flush();
        }
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) => return 0,
            Ok(_) => {}
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
        }
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (cmd, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest = rest.trim();
        let result = match cmd {
            "quit" | "exit" => return 0,
            "help" => {
                let _ = out.write_all(HELP.as_bytes());
                Ok(0)
            }
            "load" => words(rest).and_then(|ws| {
                let paths: Vec<PathBuf> = ws.into_iter().map(PathBuf::from).collect();
                session.load(&paths, out, err)
            }),
            "validate" => session.validate(out),
            "query" => {
                let (text, json) = match rest.strip_suffix("--json") {
                    Some(r) => (r.trim_end(), true),
                    None => (rest, false),
                };
                session.query(&unquote(text), json, out)
            }
            "explain" => session.explain(&unquote(rest), out),
            "export" => words(rest).and_then(|ws| export_args(&ws)).and_then(|(facts, report)| {
                session.export(facts.as_deref(), report.as_deref(), out)
            }),
            _ => {
                let _ = writeln!(err, "unknown command: {cmd}");
                continue;
            }
        };
        if let Err(e) = result {
            let _ = writeln!(err, "error: {e}");
        }
        let _ = out.flush();
    }
}

fn words(s: &str) -> Result<Vec<String>, CliError> {
    shlex::split(s).ok_or_else(|| CliError::input("unbalanced quotes"))
}

/// Strips one pair of matching outer quotes, as a shell would.
fn unquote(s: &str) -> String {
    let b = s.as_bytes();
    if b.len() >= 2 && (b[0] == b'"' || b[0] == b'\'') && b[b.len() - 1] == b[0] {
        s[1..s.len() - 1].to_string()
    } else {
        s.to_string()
    }
}

type ExportTargets = (Option<PathBuf>, Option<PathBuf>);

fn export_args(ws: &[String]) -> Result<ExportTargets, CliError> {
    let (mut facts, mut report) = (None, None);
    let mut it = ws.iter();
    while let Some(w) = it.next() {
        let slot = match w.as_str() {
            "--facts" => &mut facts,
            "--report" => &mut report,
            other => return Err(CliError::input(format!("export: unexpected argument {other:?}"))),
        };
        let v = it.next().ok_or_else(|| CliError::input(format!("export: {w} needs a file")))?;
        *slot = Some(PathBuf::from(v));
    }
    Ok((facts, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unquote_strips_matching_quotes_only() {
        assert_eq!(unquote("\"member(:a, :B)\""), "member(:a, :B)");
        assert_eq!(unquote("'x'"), "x");
        assert_eq!(unquote("\"x'"), "\"x'");
        assert_eq!(unquote("member(:a, :B)"), "member(:a, :B)");
    }

    #[test]
    fn export_arguments() {
        let ws: Vec<String> = ["--facts", "a", "--report", "b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(export_args(&ws).unwrap(), (Some("a".into()), Some("b".into())));
        assert!(export_args(&["--facts".to_string()]).is_err());
        assert!(export_args(&["x".to_string()]).is_err());
    }
}
