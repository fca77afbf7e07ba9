//! Running an external SMT solver on an emitted script.

use std::io::{Read, Write};
use std::os::unix::process::CommandExt;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use crate::error::Error;

/// Environment variable holding the default solver command.
pub const SOLVER_ENV: &str = "CONVCODE_SOLVER";

const POLL: Duration = Duration::from_millis(10);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverStatus {
    Sat,
    Unsat,
    Unknown,
}

impl SolverStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverStatus::Sat => "sat",
            SolverStatus::Unsat => "unsat",
            SolverStatus::Unknown => "unknown",
        }
    }
}

impl std::fmt::Display for SolverStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn parse_status(stdout: &str) -> Option<SolverStatus> {
    match stdout.lines().map(str::trim).find(|l| !l.is_empty())? {
        "sat" => Some(SolverStatus::Sat),
        "unsat" => Some(SolverStatus::Unsat),
        "unknown" => Some(SolverStatus::Unknown),
        _ => None,
    }
}

fn kill_group(pgid: u32) {
    let _ = Command::new("kill")
        .args(["-KILL", "--", &format!("-{pgid}")])
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .status();
}

/// Runs `command` through `sh -c` on `script` and reads the verdict from
/// the first nonblank line of its output.
///
/// If `command` contains `{file}` the script is written to a temporary file
/// whose path replaces the placeholder; otherwise it is piped on stdin. When
/// `timeout` elapses the whole process group is killed and the verdict is
/// [`SolverStatus::Unknown`].
pub fn solve_external(
    script: &str,
    command: &str,
    timeout: Duration,
) -> Result<SolverStatus, Error> {
    let mut tmp = None;
    let command_line = if command.contains("{file}") {
        let mut f = tempfile::Builder::new()
            .prefix("convcode-")
            .suffix(".smt2")
            .tempfile()?;
        f.write_all(script.as_bytes())?;
        f.flush()?;
        let path = f.path().display().to_string();
        tmp = Some(f);
        command.replace("{file}", &path)
    } else {
        command.to_string()
    };

    let mut child = Command::new("sh")
        .arg("-c")
        .arg(&command_line)
        .stdin(if tmp.is_some() {
            Stdio::null()
        } else {
            Stdio::piped()
        })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .process_group(0)
        .spawn()
        .map_err(|e| Error::Solver(format!("cannot start `{command_line}`: {e}")))?;
    let pgid = child.id();

    let stdin_writer = child.stdin.take().map(|mut stdin| {
        let text = script.to_string();
        // A solver that exits early closes the pipe; that is not our error.
        thread::spawn(move || {
            let _ = stdin.write_all(text.as_bytes());
        })
    });
    let mut stdout = child.stdout.take().expect("piped stdout");
    let mut stderr = child.stderr.take().expect("piped stderr");
    let out_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let err_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stderr.read_to_string(&mut s);
        s
    });

    let start = Instant::now();
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break Some(status);
        }
        if start.elapsed() >= timeout {
            kill_group(pgid);
            let _ = child.kill();
            let _ = child.wait();
            break None;
        }
        thread::sleep(POLL);
    };
    // Grandchildren may hold the pipes open after the shell exits.
    kill_group(pgid);
    if let Some(h) = stdin_writer {
        let _ = h.join();
    }
    let out = out_reader.join().unwrap_or_default();
    let err = err_reader.join().unwrap_or_default();
    drop(tmp);

    let Some(status) = status else {
        return Ok(SolverStatus::Unknown);
    };
    if !status.success() {
        return Err(Error::Solver(format!(
            "`{command_line}` exited with {status}: {}",
            err.trim()
        )));
    }
    parse_status(&out).ok_or_else(|| {
        Error::Solver(format!(
            "unrecognized solver output: {:?}",
            out.lines().next().unwrap_or("")
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LONG: Duration = Duration::from_secs(20);

    #[test]
    fn reads_verdict_from_stdin_mode() {
        let s = solve_external("(check-sat)", "cat >/dev/null; echo sat", LONG).unwrap();
        assert_eq!(s, SolverStatus::Sat);
        let s = solve_external("", "printf '\\nunsat\\n'", LONG).unwrap();
        assert_eq!(s, SolverStatus::Unsat);
    }

    #[test]
    fn file_placeholder_receives_script() {
        let s = solve_external("unknown\n", "head -n 1 {file}", LONG).unwrap();
        assert_eq!(s, SolverStatus::Unknown);
    }

    #[test]
    fn timeout_yields_unknown() {
        let start = Instant::now();
        let s = solve_external("", "sleep 30", Duration::from_millis(200)).unwrap();
        assert_eq!(s, SolverStatus::Unknown);
        assert!(start.elapsed() < Duration::from_secs(10));
    }

    #[test]
    fn failures_are_errors() {
        assert!(matches!(
            solve_external("", "exit 3", LONG),
            Err(Error::Solver(_))
        ));
        assert!(matches!(
            solve_external("", "echo maybe", LONG),
            Err(Error::Solver(_))
        ));
    }
}
