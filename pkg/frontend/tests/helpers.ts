import { spawn } from "node:child_process";
import type { ChildProcess } from "node:child_process";
import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import path from "node:path";

import type { SessionAction } from "../src/protocol";
import { LineBuffer } from "../src/transport";
import type { Transport } from "../src/transport";

export const REPO_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..");

export function corpusSource(name: string): string {
  return readFileSync(path.join(REPO_ROOT, "corpus", `${name}.jbi`), "utf8");
}

// one interpreter session over a subprocess's stdio; the same line protocol
// the WebSocket carries
const SESSION_PY =
  "import sys\n" +
  "from jbi.session import StreamTransport, handle_session\n" +
  "handle_session(StreamTransport(sys.stdin, sys.stdout))\n";

export class StdioTransport implements Transport {
  private readonly proc: ChildProcess;
  private lineCb: (line: string) => void = () => {};
  private closeCb: () => void = () => {};
  private closed = false;

  constructor() {
    this.proc = spawn("python3", ["-c", SESSION_PY], {
      cwd: REPO_ROOT,
      stdio: ["pipe", "pipe", "inherit"],
    });
    const buffer = new LineBuffer((line) => this.lineCb(line));
    this.proc.stdout!.setEncoding("utf8");
    this.proc.stdout!.on("data", (chunk: string) => buffer.push(chunk));
    this.proc.on("exit", () => {
      buffer.end();
      this.fireClose();
    });
  }

  private fireClose(): void {
    if (!this.closed) {
      this.closed = true;
      this.closeCb();
    }
  }

  send(line: string): void {
    this.proc.stdin!.write(line + "\n");
  }

  onLine(cb: (line: string) => void): void {
    this.lineCb = cb;
  }

  onClose(cb: () => void): void {
    this.closeCb = cb;
  }

  close(): void {
    this.proc.kill();
  }
}

/**
 * In-memory transport whose server side is a scripted handler: it receives
 * each decoded action and emits zero or more event objects.
 */
export class FakeTransport implements Transport {
  readonly sent: string[] = [];
  private lineCb: (line: string) => void = () => {};
  private closeCb: () => void = () => {};
  private closed = false;

  constructor(
    private readonly handler: (action: SessionAction, emit: (ev: object) => void) => void,
  ) {}

  send(line: string): void {
    this.sent.push(line);
    const action = JSON.parse(line) as SessionAction;
    queueMicrotask(() => {
      if (!this.closed) {
        this.handler(action, (ev) => this.lineCb(JSON.stringify(ev)));
      }
    });
  }

  onLine(cb: (line: string) => void): void {
    this.lineCb = cb;
  }

  onClose(cb: () => void): void {
    this.closeCb = cb;
  }

  close(): void {
    if (!this.closed) {
      this.closed = true;
      this.closeCb();
    }
  }
}

export async function waitFor(
  check: () => boolean,
  what = "condition",
  timeoutMs = 10000,
): Promise<void> {
  const start = Date.now();
  while (!check()) {
    if (Date.now() - start > timeoutMs) {
      throw new Error(`timed out waiting for ${what}`);
    }
    await new Promise((r) => setTimeout(r, 5));
  }
}
