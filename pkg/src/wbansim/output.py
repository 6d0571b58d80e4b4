"""CSV emission for run summaries and per-packet records."""

import csv
import io

SUMMARY_HEADER = (
    "protocol,nodes,seed,duration_s,generated,delivered,dropped,in_queue,"
    "mean_delay_s,max_delay_s,mean_queuing_s,mean_access_s,mean_tx_s,mean_prop_s,"
    "delivery_ratio"
)
PACKET_HEADER = "packet_id,source,generated_ns,delivered_ns,delay_ns"
MISSING = "NA"


def fmt_seconds(value):
    return MISSING if value is None else f"{value:.6f}"


def summary_row(s):
    return [
        s.protocol,
        str(s.node_count),
        str(s.seed),
        fmt_seconds(s.duration),
        str(s.generated),
        str(s.delivered),
        str(s.dropped),
        str(s.in_queue_at_end),
        fmt_seconds(s.mean_delay),
        fmt_seconds(s.max_delay),
        fmt_seconds(s.mean_queuing),
        fmt_seconds(s.mean_access),
        fmt_seconds(s.mean_transmission),
        fmt_seconds(s.mean_propagation),
        f"{s.delivery_ratio:.6f}",
    ]


def summaries_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_HEADER.split(","))
    for row in rows:
        writer.writerow(summary_row(row))
    return buf.getvalue()


def packets_to_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PACKET_HEADER.split(","))
    for r in records:
        writer.writerow([r.packet_id, r.source, r.generated_at, r.delivered_at, r.delay])
    return buf.getvalue()


def _write(text, path):
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def write_csv(rows, path):
    _write(summaries_to_csv(rows), path)


def write_packets_csv(records, path):
    _write(packets_to_csv(records), path)
