/**
 * Line transports. The service speaks one JSON object per line; WebSocket
 * frames carry one line each, byte streams need splitting.
 */

export interface Transport {
  send(line: string): void;
  onLine(cb: (line: string) => void): void;
  onClose(cb: () => void): void;
  close(): void;
}

/** Accumulates stream chunks and emits complete newline-terminated lines. */
export class LineBuffer {
  private pending = "";

  constructor(private readonly emit: (line: string) => void) {}

  push(chunk: string): void {
    this.pending += chunk;
    for (;;) {
      const nl = this.pending.indexOf("\n");
      if (nl < 0) {
        break;
      }
      const line = this.pending.slice(0, nl);
      this.pending = this.pending.slice(nl + 1);
      this.emit(line);
    }
  }

  /** Flush a trailing unterminated line, if any (stream end). */
  end(): void {
    if (this.pending !== "") {
      const line = this.pending;
      this.pending = "";
      this.emit(line);
    }
  }
}

/**
 * Minimal constructor shape shared by the browser WebSocket and compatible
 * implementations, so tests can inject one.
 */
export interface WebSocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: (() => void) | null;
  onerror: ((ev?: unknown) => void) | null;
}

export type WebSocketCtor = new (url: string) => WebSocketLike;

export class WebSocketTransport implements Transport {
  private readonly socket: WebSocketLike;
  private lineCb: (line: string) => void = () => {};
  private closeCb: () => void = () => {};
  private closed = false;
  private open = false;
  private readonly outbox: string[] = [];

  constructor(url: string, ctor?: WebSocketCtor) {
    const impl = ctor ?? (globalThis as { WebSocket?: WebSocketCtor }).WebSocket;
    if (impl === undefined) {
      throw new Error("no WebSocket implementation available");
    }
    this.socket = new impl(url);
    this.socket.onopen = () => {
      this.open = true;
      for (const line of this.outbox.splice(0)) {
        this.socket.send(line);
      }
    };
    this.socket.onmessage = (ev) => {
      // one event per frame; tolerate a trailing newline either way
      const text = String(ev.data);
      this.lineCb(text.endsWith("\n") ? text.slice(0, -1) : text);
    };
    this.socket.onclose = () => this.fireClose();
    this.socket.onerror = () => this.fireClose();
  }

  private fireClose(): void {
    if (!this.closed) {
      this.closed = true;
      this.closeCb();
    }
  }

  send(line: string): void {
    if (this.open) {
      this.socket.send(line);
    } else {
      this.outbox.push(line);
    }
  }

  onLine(cb: (line: string) => void): void {
    this.lineCb = cb;
  }

  onClose(cb: () => void): void {
    this.closeCb = cb;
  }

  close(): void {
    this.socket.close();
    this.fireClose();
  }
}
