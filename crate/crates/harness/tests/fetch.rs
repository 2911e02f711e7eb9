use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;

use maxcut_harness::{fetch_instances, EntryStatus, FetchMode, Manifest};
use sha2::{Digest, Sha256};

/// Serves fixed bodies over plain HTTP and counts requests.
struct Server {
    base: String,
    hits: Arc<AtomicUsize>,
}

fn serve(files: HashMap<&'static str, &'static [u8]>) -> Server {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let hits = Arc::new(AtomicUsize::new(0));
    let counter = Arc::clone(&hits);
    thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            counter.fetch_add(1, Ordering::SeqCst);
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            reader.read_line(&mut request_line).unwrap();
            loop {
                let mut header = String::new();
                if reader.read_line(&mut header).unwrap() == 0 || header == "\r\n" {
                    break;
                }
            }
            let path = request_line.split_whitespace().nth(1).unwrap_or("/");
            let (status, body): (&str, &[u8]) = match files.get(path.trim_start_matches('/')) {
                Some(body) => ("200 OK", body),
                None => ("404 Not Found", b"not found"),
            };
            let head = format!("HTTP/1.1 {status}\r\nContent-Length: {}\r\nConnection: close\r\n\r\n", body.len());
            let _ = stream.write_all(head.as_bytes());
            let _ = stream.write_all(body);
        }
    });
    Server { base, hits }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

const G_A: &[u8] = b"3 3\n1 2 1\n2 3 1\n1 3 1\n";
const G_B: &[u8] = b"2 1\n1 2 5\n";

#[test]
fn downloads_then_verifies_without_network() {
    let server = serve(HashMap::from([("a.txt", G_A), ("b.txt", G_B)]));
    let manifest = Manifest::parse(&format!(
        "a {0}/a.txt {1}\nb {0}/b.txt {2}\n",
        server.base,
        digest(G_A),
        digest(G_B)
    ))
    .unwrap();
    let dest = tempfile::tempdir().unwrap();

    let first = fetch_instances(&manifest, dest.path(), FetchMode::Online).unwrap();
    assert!(first.is_success());
    assert_eq!(first.count(|s| *s == EntryStatus::Downloaded), 2);
    assert_eq!(fs::read(dest.path().join("a")).unwrap(), G_A);
    assert!(!dest.path().join("a.part").exists());
    assert_eq!(server.hits.load(Ordering::SeqCst), 2);

    let second = fetch_instances(&manifest, dest.path(), FetchMode::Online).unwrap();
    assert_eq!(second.count(|s| *s == EntryStatus::Verified), 2);
    assert_eq!(server.hits.load(Ordering::SeqCst), 2, "present files must not be re-downloaded");
}

#[test]
fn present_files_never_touch_the_network() {
    let dest = tempfile::tempdir().unwrap();
    fs::write(dest.path().join("a"), G_A).unwrap();
    // port 9 on loopback refuses connections; any request would fail the entry
    let manifest = Manifest::parse(&format!("a http://127.0.0.1:9/a {}\n", digest(G_A))).unwrap();
    let report = fetch_instances(&manifest, dest.path(), FetchMode::Online).unwrap();
    assert_eq!(report.entries, [("a".to_owned(), EntryStatus::Verified)]);
}

#[test]
fn corrupted_download_is_quarantined() {
    let server = serve(HashMap::from([("a.txt", G_B)]));
    let manifest = Manifest::parse(&format!("a {}/a.txt {}\n", server.base, digest(G_A))).unwrap();
    let dest = tempfile::tempdir().unwrap();
    let report = fetch_instances(&manifest, dest.path(), FetchMode::Online).unwrap();
    assert!(!report.is_success());
    let EntryStatus::Quarantined { path, actual } = &report.entries[0].1 else {
        panic!("{:?}", report.entries);
    };
    assert_eq!(*actual, digest(G_B));
    assert_eq!(*path, dest.path().join("quarantine/a"));
    assert_eq!(fs::read(path).unwrap(), G_B);
    assert!(!dest.path().join("a").exists());
}

#[test]
fn corrupted_local_file_is_quarantined() {
    let dest = tempfile::tempdir().unwrap();
    fs::write(dest.path().join("a"), b"tampered").unwrap();
    let manifest = Manifest::parse(&format!("a http://127.0.0.1:9/a {}\n", digest(G_A))).unwrap();
    let report = fetch_instances(&manifest, dest.path(), FetchMode::Offline).unwrap();
    assert!(!report.is_success());
    assert!(matches!(report.entries[0].1, EntryStatus::Quarantined { .. }));
    assert!(dest.path().join("quarantine/a").exists());
    assert!(!dest.path().join("a").exists());
}

#[test]
fn http_errors_are_failures() {
    let server = serve(HashMap::new());
    let manifest = Manifest::parse(&format!("a {}/missing {}\n", server.base, digest(G_A))).unwrap();
    let dest = tempfile::tempdir().unwrap();
    let report = fetch_instances(&manifest, dest.path(), FetchMode::Online).unwrap();
    assert!(matches!(report.entries[0].1, EntryStatus::DownloadFailed(_)));
    assert!(!report.is_success());
    assert!(!dest.path().join("a").exists());
}

#[test]
fn offline_mode_reports_missing_files() {
    let dest = tempfile::tempdir().unwrap();
    fs::write(dest.path().join("a"), G_A).unwrap();
    let manifest = Manifest::parse(&format!(
        "a http://127.0.0.1:9/a {}\nb http://127.0.0.1:9/b {}\n",
        digest(G_A),
        digest(G_B)
    ))
    .unwrap();
    let report = fetch_instances(&manifest, dest.path(), FetchMode::Offline).unwrap();
    assert_eq!(report.entries, [("a".to_owned(), EntryStatus::Verified), ("b".to_owned(), EntryStatus::Missing)]);
    assert!(report.is_success());
}
